#include "hexid/codes.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hexid {

namespace {

long long floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long mod(long long a, long long b) { return a - floordiv(a, b) * b; }

}  // namespace

Lattice::Lattice(Vertex b1, Vertex b2) {
    if (parity(b1) != 0 || parity(b2) != 0)
        throw std::invalid_argument("lattice basis vector with odd coordinate sum");
    long long det = b1.x * b2.y - b1.y * b2.x;
    if (det == 0) throw std::invalid_argument("lattice basis is singular");
    // column reduction to Hermite normal form (p,0),(q,r)
    Vertex u = b1, v = b2;
    while (v.y != 0) {
        long long k = floordiv(u.y, v.y);
        u = u - Vertex{k * v.x, k * v.y};
        std::swap(u, v);
    }
    // v = (x,0), u = (q,r)
    p_ = v.x < 0 ? -v.x : v.x;
    if (u.y < 0) u = Vertex{-u.x, -u.y};
    q_ = mod(u.x, p_);
    r_ = u.y;
}

Vertex Lattice::reduce(Vertex v) const {
    long long k = floordiv(v.y, r_);
    v.x -= k * q_;
    v.y -= k * r_;
    v.x = mod(v.x, p_);
    return v;
}

PeriodicCode::PeriodicCode(Lattice lattice, const std::vector<Vertex>& codewords)
    : lattice_(lattice) {
    if (codewords.empty()) throw std::invalid_argument("code must be non-empty");
    for (Vertex c : codewords) {
        Vertex rc = lattice_.reduce(c);
        if (!set_.insert(rc).second)
            throw std::invalid_argument("duplicate codeword after reduction");
    }
    codewords_.assign(set_.begin(), set_.end());
    std::sort(codewords_.begin(), codewords_.end());
}

std::vector<Vertex> PeriodicCode::domain() const {
    std::vector<Vertex> out;
    out.reserve(lattice_.area());
    for (long long y = 0; y < lattice_.r(); ++y)
        for (long long x = 0; x < lattice_.p(); ++x) out.push_back({x, y});
    return out;
}

std::vector<Vertex> PeriodicCode::iset(Vertex u, int r) const {
    std::vector<Vertex> out;
    for (Vertex v : ball(u, r))
        if (is_codeword(v)) out.push_back(v);
    return out;
}

std::optional<VerifyFailure> PeriodicCode::verify_identifying(int r) const {
    // Checking one fundamental domain suffices: periodicity transports every
    // vertex and every pair into it. Pairs need only be checked to distance
    // 2r: if d(u,v) > 2r the balls are disjoint, so two nonempty I-sets can
    // never coincide.
    auto dom = domain();
    for (Vertex u : dom)
        if (iset(u, r).empty()) return VerifyFailure{u, std::nullopt};
    for (Vertex u : dom) {
        for (Vertex v : ball(u, 2 * r)) {
            if (v == u) continue;
            // separated iff some codeword lies in B_r(u) symmetric-diff B_r(v)
            auto bu = ball(u, r), bv = ball(v, r);
            bool sep = false;
            for (Vertex z : bu)
                if (!std::binary_search(bv.begin(), bv.end(), z) && is_codeword(z)) {
                    sep = true;
                    break;
                }
            if (!sep)
                for (Vertex z : bv)
                    if (!std::binary_search(bu.begin(), bu.end(), z) && is_codeword(z)) {
                        sep = true;
                        break;
                    }
            if (!sep) return VerifyFailure{std::nullopt, std::make_pair(u, v)};
        }
    }
    return std::nullopt;
}

Rational PeriodicCode::density() const {
    return Rational(static_cast<long long>(codewords_.size()), lattice_.area());
}

Rational PeriodicCode::density_profile(long long n) const {
    Window w{n};
    long long count = 0;
    for (Vertex v : w.vertices())
        if (is_codeword(v)) ++count;
    return Rational(count, w.size());
}

bool is_r_separated(const PeriodicCode& code, Vertex u, Vertex v, int r) {
    auto iu = code.iset(u, r);
    auto iv = code.iset(v, r);
    return iu != iv;
}

PeriodicCode embed_finite(const std::vector<Vertex>& vs, int r) {
    long long span = 0;
    for (Vertex v : vs) {
        span = std::max({span, v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y});
    }
    long long side = std::max<long long>(4 * r + 3, 2 * span + 2 * r + 3);
    if (side % 2 != 0) ++side;
    return PeriodicCode(Lattice({side, 0}, {0, side}), vs);
}

std::optional<VerifyFailure> verify_identifying_window(const PeriodicCode& code, int r,
                                                       long long n) {
    // brute force over Q_n: compare I-sets of all pairs directly
    std::vector<Vertex> q = Window{n}.vertices();
    std::vector<std::vector<Vertex>> isets;
    isets.reserve(q.size());
    for (Vertex u : q) {
        auto I = code.iset(u, r);
        if (I.empty()) return VerifyFailure{u, std::nullopt};
        isets.push_back(std::move(I));
    }
    for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = i + 1; j < q.size(); ++j)
            if (isets[i] == isets[j])
                return VerifyFailure{std::nullopt, std::make_pair(q[i], q[j])};
    return std::nullopt;
}

namespace {

std::vector<std::pair<int, std::vector<std::string>>> tokenize(std::istream& in) {
    std::vector<std::pair<int, std::vector<std::string>>> lines;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (!toks.empty()) lines.emplace_back(no, toks);
    }
    return lines;
}

long long to_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
}

}  // namespace

PeriodicCode parse_code(std::istream& in) {
    auto lines = tokenize(in);
    std::optional<Lattice> lat;
    std::vector<Vertex> cws;
    for (auto& [no, toks] : lines) {
        if (toks[0] == "lattice") {
            if (lat) throw ParseError(no, "duplicate lattice line");
            if (toks.size() != 5) throw ParseError(no, "lattice needs 4 integers");
            Vertex b1{to_int(toks[1], no), to_int(toks[2], no)};
            Vertex b2{to_int(toks[3], no), to_int(toks[4], no)};
            try {
                lat.emplace(b1, b2);
            } catch (const std::invalid_argument& e) {
                throw ParseError(no, e.what());
            }
        } else if (toks[0] == "codeword") {
            if (!lat) throw ParseError(no, "codeword before lattice line");
            if (toks.size() != 3) throw ParseError(no, "codeword needs 2 integers");
            Vertex c{to_int(toks[1], no), to_int(toks[2], no)};
            Vertex rc = lat->reduce(c);
            for (Vertex prev : cws)
                if (lat->reduce(prev) == rc)
                    throw ParseError(no, "duplicate codeword after reduction");
            cws.push_back(c);
        } else {
            throw ParseError(no, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!lat) throw ParseError(0, "missing lattice line");
    if (cws.empty()) throw ParseError(0, "empty codeword list");
    return PeriodicCode(*lat, cws);
}

PeriodicCode parse_code_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return parse_code(f);
}

std::string format_code(const PeriodicCode& code) {
    std::ostringstream out;
    const Lattice& l = code.lattice();
    out << "lattice " << l.p() << " 0 " << l.q() << " " << l.r() << "\n";
    for (Vertex c : code.codewords()) out << "codeword " << c.x << " " << c.y << "\n";
    return out.str();
}

std::vector<Vertex> parse_vertex_set(std::istream& in) {
    auto lines = tokenize(in);
    std::vector<Vertex> out;
    for (auto& [no, toks] : lines) {
        if (toks[0] != "codeword")
            throw ParseError(no, "expected 'codeword <x> <y>', got '" + toks[0] + "'");
        if (toks.size() != 3) throw ParseError(no, "codeword needs 2 integers");
        Vertex c{to_int(toks[1], no), to_int(toks[2], no)};
        if (std::find(out.begin(), out.end(), c) != out.end())
            throw ParseError(no, "duplicate vertex");
        out.push_back(c);
    }
    if (out.empty()) throw ParseError(0, "empty vertex set");
    return out;
}

std::vector<Vertex> parse_vertex_set_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return parse_vertex_set(f);
}

}  // namespace hexid
