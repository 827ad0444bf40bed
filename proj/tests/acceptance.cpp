// Acceptance suite: runs each acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.
//
// usage: acceptance <path-to-cli> <data-dir> <rules-file>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "hexid/discharge.hpp"
#include "hexid/search.hpp"
#include "hexid/share.hpp"

using namespace hexid;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
    std::printf("%s  criterion %d (%s) [%.2fs]%s%s\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), seconds, detail.empty() ? "" : ": ", detail.c_str());
    if (!ok) ++failures;
}

struct Timer {
    Clock::time_point t0 = Clock::now();
    double secs() const {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
};

std::string run_cli(const std::string& cmd, int& status) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) { status = -1; return ""; }
    std::string out;
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    status = pclose(pipe);
    if (WIFEXITED(status)) status = WEXITSTATUS(status);
    return out;
}

std::vector<std::pair<std::string, PeriodicCode>> load_corpus(const std::string& dir) {
    std::vector<std::pair<std::string, PeriodicCode>> out;
    std::vector<std::filesystem::path> files;
    for (auto& e : std::filesystem::directory_iterator(dir + "/corpus"))
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (auto& f : files) out.emplace_back(f.stem().string(), parse_code_file(f.string()));
    return out;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: acceptance <cli> <data-dir> <rules-file>\n";
        return 2;
    }
    std::string cli = argv[1], data = argv[2], rules_file = argv[3];
    auto corpus = load_corpus(data);
    auto rules = load_rules_file(rules_file);

    // 1. estimator exactness through the CLI `bound` command
    {
        Timer t;
        std::string tmp = std::filesystem::temp_directory_path() / "hexid_dset.txt";
        bool ok = true;
        std::string detail;
        auto check_cli = [&](const std::string& dset, const std::string& at,
                             const std::string& want) {
            std::ofstream f(tmp);
            f << dset;
            f.close();
            int status = 0;
            std::string out = trim(run_cli(cli + " bound --dset " + tmp + " --at " + at, status));
            if (status != 0 || out != want) {
                ok = false;
                detail += "[at " + at + " got '" + out + "' want " + want + "] ";
            }
        };
        std::string d1 = "codeword 0 0\ncodeword 0 1\ncodeword 1 -1\n";
        check_cli(d1, "0,0", "17/4");
        check_cli(d1, "0,1", "55/12");
        std::string d2 = "codeword 0 0\ncodeword 0 1\ncodeword 2 0\n";
        check_cli(d2, "0,0", "13/3");
        check_cli(d2, "0,1", "9/2");
        report(1, "estimator exactness", ok && t.secs() < 1.0, t.secs(), detail);
    }

    // 2. explicit four-vertex configuration vectors
    {
        Timer t;
        bool ok = share_upper_bound({{0, 0}, {0, 1}, {-3, 0}, {1, -1}}, {0, 0}, 2) ==
                      Rational(15, 4) &&
                  share_upper_bound({{0, 0}, {-1, 0}, {0, 1}}, {0, 0}, 2) == Rational(17, 4) &&
                  share_upper_bound({{1, 0}, {1, 1}, {-1, -1}, {3, -1}}, {1, 0}, 2) ==
                      Rational(9, 2);
        report(2, "explicit-D vectors", ok && t.secs() < 1.0, t.secs());
    }

    // 3. share-sum identity over the corpus
    {
        Timer t;
        bool ok = corpus.size() >= 25;
        std::string detail = "codes: " + std::to_string(corpus.size());
        for (auto& [name, code] : corpus) {
            auto rep = share_report(code, 2);
            if (rep.sum != Rational(code.lattice().area())) {
                ok = false;
                detail += " sum!=area at " + name;
            }
        }
        report(3, "share-sum identity", ok && t.secs() < 10.0, t.secs(), detail);
    }

    // 4. share cap 5
    {
        Timer t;
        bool ok = true;
        int verified = 0;
        for (auto& [name, code] : corpus) {
            if (code.verify_identifying(2).has_value()) continue;
            ++verified;
            if (share_report(code, 2).max_share > Rational(5)) ok = false;
        }
        report(4, "share cap 5", ok && verified >= 25 && t.secs() < 30.0, t.secs(),
               "verified codes: " + std::to_string(verified));
    }

    // 5. discharge bound and conservation with the shipped rules
    {
        Timer t;
        bool ok = true;
        std::string detail;
        for (auto& [name, code] : corpus) {
            if (code.verify_identifying(2).has_value()) continue;
            auto rep = apply_scheme(code, rules);
            if (rep.max_ms2 > Rational(19, 4) || rep.sum_ms2 != rep.sum_s2) {
                ok = false;
                detail += " " + name;
            }
        }
        report(5, "discharge bound 19/4 + conservation", ok && t.secs() < 60.0, t.secs(),
               detail);
    }

    // 6. exhaustive consistency search, r=2, area <= 12: nothing below 4/19
    {
        Timer t;
        SearchConfig cfg;
        cfg.r = 2;
        cfg.max_area = 12;
        cfg.node_budget = 2'000'000'000;
        cfg.threads = static_cast<int>(std::thread::hardware_concurrency());
        if (cfg.threads <= 0) cfg.threads = 1;
        auto frontier = search_min_density(cfg);
        bool ok = !frontier.any_budget_hit;
        std::string detail;
        for (auto& [a, e] : frontier.by_area) {
            if (!e.exhausted) ok = false;
            if (e.min_count > 0 && Rational(e.min_count, a) < Rational(4, 19)) {
                ok = false;
                detail += " density below 4/19 at area " + std::to_string(a);
            }
        }
        report(6, "exhaustive search consistency", ok && t.secs() < 600.0, t.secs(), detail);
    }

    // 7. window inequality
    {
        Timer t;
        bool ok = true;
        std::string detail;
        for (auto& [name, code] : corpus) {
            if (code.verify_identifying(2).has_value()) continue;
            auto cert = certify(code, rules, {5, 10, 15});
            for (auto& w : cert.windows)
                if (!w.ok) {
                    ok = false;
                    detail += " " + name + "@n=" + std::to_string(w.n);
                }
        }
        report(7, "window inequality", ok && t.secs() < 30.0, t.secs(), detail);
    }

    // 8. oracle equivalence: verifier vs window brute force; search vs
    // unpruned enumeration
    {
        Timer t;
        bool ok = true;
        std::mt19937 rng(424242);
        int done = 0;
        while (done < 200) {
            long long p = 2 * (1 + rng() % 3);
            long long r = 1 + rng() % 3;
            long long q = rng() % p;
            if ((q + r) % 2 != 0) continue;
            std::vector<Vertex> cws;
            for (long long y = 0; y < r; ++y)
                for (long long x = 0; x < p; ++x)
                    if (rng() % 100 < 40) cws.push_back({x, y});
            if (cws.empty()) continue;
            PeriodicCode code(Lattice({p, 0}, {q, r}), cws);
            bool fast = !code.verify_identifying(2).has_value();
            bool slow = !verify_identifying_window(code, 2, p + r + 6).has_value();
            if (fast != slow) ok = false;
            ++done;
        }
        // unpruned enumeration on every lattice of area <= 10
        for (auto& lat : enumerate_lattices(10)) {
            long long a = lat.area();
            std::vector<Vertex> cells;
            for (long long y = 0; y < lat.r(); ++y)
                for (long long x = 0; x < lat.p(); ++x) cells.push_back({x, y});
            int best = -1;
            for (uint64_t m = 1; m < (uint64_t{1} << a); ++m) {
                std::vector<Vertex> sub;
                for (long long i = 0; i < a; ++i)
                    if (m >> i & 1) sub.push_back(cells[i]);
                PeriodicCode code(lat, sub);
                if (!code.verify_identifying(2).has_value()) {
                    int k = static_cast<int>(sub.size());
                    if (best < 0 || k < best) best = k;
                }
            }
            auto res = search_lattice(lat, 2, 2'000'000'000, static_cast<int>(a));
            if (!res.exhausted || res.min_count != best) ok = false;
        }
        report(8, "oracle equivalence", ok && t.secs() < 300.0, t.secs());
    }

    std::printf("%s\n", failures == 0 ? "acceptance: ALL CRITERIA PASS"
                                      : "acceptance: FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
