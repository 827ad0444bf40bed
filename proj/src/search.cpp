#include "hexid/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>
#include <thread>

namespace hexid {

std::vector<Lattice> enumerate_lattices(long long max_area) {
    std::vector<Lattice> out;
    for (long long p = 2; p <= max_area; p += 2)
        for (long long r = 1; p * r <= max_area; ++r)
            for (long long q = 0; q < p; ++q)
                if ((q + r) % 2 == 0) out.emplace_back(Vertex{p, 0}, Vertex{q, r});
    return out;
}

namespace {

struct LatticeModel {
    long long p, q, r, area;
    std::vector<Vertex> cells;
    std::vector<uint64_t> cover;  // per cell: reduced support of B_r
    std::vector<uint64_t> seps;   // per close pair: support of the ball symmetric difference
    bool degenerate = false;      // some separation mask is empty: never identifying

    LatticeModel(const Lattice& lat, int rad) : p(lat.p()), q(lat.q()), r(lat.r()) {
        area = p * r;
        for (long long y = 0; y < r; ++y)
            for (long long x = 0; x < p; ++x) cells.push_back({x, y});
        auto idx = [&](Vertex v) {
            Vertex c = lat.reduce(v);
            return static_cast<size_t>(c.y * p + c.x);
        };
        auto mask_of = [&](const std::vector<Vertex>& vs) {
            uint64_t m = 0;
            for (Vertex v : vs) m |= uint64_t{1} << idx(v);
            return m;
        };
        std::vector<uint64_t> all;
        for (Vertex u : cells) {
            auto bu = ball(u, rad);
            cover.push_back(mask_of(bu));
            for (Vertex v : ball(u, 2 * rad)) {
                if (v == u) continue;
                auto bv = ball(v, rad);
                std::vector<Vertex> sd;
                std::set_symmetric_difference(bu.begin(), bu.end(), bv.begin(), bv.end(),
                                              std::back_inserter(sd));
                uint64_t m = mask_of(sd);
                if (m == 0) degenerate = true;
                seps.push_back(m);
            }
        }
        std::sort(seps.begin(), seps.end());
        seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
    }
};

struct Dfs {
    std::vector<uint64_t> masks;
    int n;
    std::vector<int> order;  // cell visiting order
    long long budget;
    bool budget_hit = false;
    int best_k;
    uint64_t best_set = 0;
    bool found = false;

    Dfs(const LatticeModel& model, long long node_budget, int max_count)
        : n(static_cast<int>(model.area)), budget(node_budget), best_k(max_count + 1) {
        masks = model.cover;
        masks.insert(masks.end(), model.seps.begin(), model.seps.end());
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        // fail-fast ordering: cells that appear in few constraint masks first
        std::vector<int> freq(n, 0);
        for (uint64_t m : masks)
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) ++freq[i];
        for (int i = 0; i < n; ++i) order.push_back(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return freq[a] < freq[b]; });
    }

    void run() { walk(0, 0, 0, 0); }

    void walk(size_t depth, uint64_t chosen, int k, uint64_t excluded) {
        if (budget-- <= 0) {
            budget_hit = true;
            return;
        }
        if (k >= best_k) return;
        // prune: a constraint with all remaining candidates excluded is dead
        for (uint64_t m : masks)
            if (!(m & chosen) && !(m & ~excluded)) return;
        if (depth == static_cast<size_t>(n)) {
            for (uint64_t m : masks)
                if (!(m & chosen)) return;
            best_k = k;
            best_set = chosen;
            found = true;
            return;
        }
        uint64_t bit = uint64_t{1} << order[depth];
        walk(depth + 1, chosen, k, excluded | bit);
        if (budget_hit) return;
        walk(depth + 1, chosen | bit, k + 1, excluded);
    }
};

}  // namespace

LatticeResult search_lattice(const Lattice& lat, int r, long long node_budget,
                             int max_count) {
    LatticeResult res;
    if (lat.area() > 62)
        throw std::invalid_argument("search: lattice area above the 62-cell limit");
    LatticeModel model(lat, r);
    if (model.degenerate) {
        res.min_count = -1;
        res.exhausted = true;
        return res;
    }
    Dfs dfs(model, node_budget, max_count);
    dfs.run();
    res.exhausted = !dfs.budget_hit;
    if (dfs.found) {
        std::vector<Vertex> cws;
        for (int i = 0; i < static_cast<int>(model.area); ++i)
            if (dfs.best_set >> i & 1) cws.push_back(model.cells[i]);
        res.min_count = dfs.best_k;
        res.witness = PeriodicCode(lat, cws);
    }
    return res;
}

SearchFrontier search_min_density(const SearchConfig& config) {
    auto lats = enumerate_lattices(config.max_area);
    std::vector<LatticeResult> results(lats.size());
    std::atomic<size_t> next{0};
    int nthreads = std::max(1, config.threads);
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= lats.size()) break;
            int cap = static_cast<int>(lats[i].area());
            if (config.target_density) {
                // only interested in codes strictly below the target
                Rational t = *config.target_density;
                long long a = lats[i].area();
                // largest k with k/a < t
                long long k = (t.num() * a - 1) / t.den();
                while (Rational(k, a) >= t) --k;
                cap = static_cast<int>(std::max<long long>(k, 0));
                if (cap == 0) {
                    results[i] = LatticeResult{-1, std::nullopt, true};
                    continue;
                }
            }
            results[i] = search_lattice(lats[i], config.r, config.node_budget, cap);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SearchFrontier frontier;
    for (size_t i = 0; i < lats.size(); ++i) {
        long long a = lats[i].area();
        auto& entry = frontier.by_area[a];
        if (entry.area == 0) {
            entry.area = a;
            entry.min_count = -1;
            entry.exhausted = true;
        }
        const LatticeResult& lr = results[i];
        if (!lr.exhausted) {
            entry.exhausted = false;
            frontier.any_budget_hit = true;
        }
        if (lr.min_count >= 0 &&
            (entry.min_count < 0 || lr.min_count < entry.min_count)) {
            entry.min_count = lr.min_count;
            entry.witness = lr.witness;
        }
    }
    return frontier;
}

std::string frontier_report(const SearchFrontier& frontier, bool tsv) {
    std::ostringstream out;
    if (tsv) {
        out << "area\tmin_count\tdensity\texhausted\n";
        for (auto& [a, e] : frontier.by_area) {
            out << a << "\t";
            if (e.min_count < 0)
                out << "-\t-\t";
            else
                out << e.min_count << "\t" << Rational(e.min_count, a).str() << "\t";
            out << (e.exhausted ? "yes" : "no") << "\n";
        }
        return out.str();
    }
    out << "area  min  density  exhausted\n";
    for (auto& [a, e] : frontier.by_area) {
        out << a;
        for (size_t i = std::to_string(a).size(); i < 6; ++i) out << ' ';
        if (e.min_count < 0)
            out << "-    -        ";
        else {
            std::string k = std::to_string(e.min_count);
            std::string d = Rational(e.min_count, a).str();
            out << k;
            for (size_t i = k.size(); i < 5; ++i) out << ' ';
            out << d;
            for (size_t i = d.size(); i < 9; ++i) out << ' ';
        }
        out << (e.exhausted ? "yes" : "no") << "\n";
    }
    return out.str();
}

}  // namespace hexid
