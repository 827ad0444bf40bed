#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "hexid/grid.hpp"
#include "hexid/rational.hpp"

namespace hexid {

// Translation lattice of a periodic code. Both basis vectors must have even
// coordinate sum, so every lattice translation is a grid automorphism.
// Internally stored in Hermite normal form: basis (p,0), (q,r) with p,r > 0
// and 0 <= q < p; area = p*r = |det|.
class Lattice {
public:
    Lattice(Vertex b1, Vertex b2);

    long long p() const { return p_; }
    long long q() const { return q_; }
    long long r() const { return r_; }
    long long area() const { return p_ * r_; }

    // canonical representative of v modulo the lattice, in [0,p) x [0,r)
    Vertex reduce(Vertex v) const;

    bool operator==(const Lattice& o) const {
        return p_ == o.p_ && q_ == o.q_ && r_ == o.r_;
    }

private:
    long long p_, q_, r_;
};

struct VerifyFailure {
    // either one uncovered vertex or one unseparated pair
    std::optional<Vertex> uncovered;
    std::optional<std::pair<Vertex, Vertex>> unseparated;
};

// A periodic code: codeword offsets within the fundamental domain of its
// lattice. Represents the infinite code invariant under all lattice
// translations.
class PeriodicCode {
public:
    PeriodicCode(Lattice lattice, const std::vector<Vertex>& codewords);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<Vertex>& codewords() const { return codewords_; }

    Vertex reduce(Vertex v) const { return lattice_.reduce(v); }
    bool is_codeword(Vertex v) const { return set_.count(lattice_.reduce(v)) != 0; }

    std::vector<Vertex> domain() const;

    // codewords of the ball B_r(u), as absolute vertices
    std::vector<Vertex> iset(Vertex u, int r) const;

    // nullopt when the code is r-identifying; otherwise the lexicographically
    // smallest witness.
    std::optional<VerifyFailure> verify_identifying(int r) const;

    Rational density() const;            // |codewords| / area
    Rational density_profile(long long n) const;  // |C intersect Q_n| / |Q_n|

private:
    Lattice lattice_;
    std::vector<Vertex> codewords_;  // reduced, sorted
    std::unordered_set<Vertex, VertexHash> set_;
};

// The square window Q_n = {(x,y) : |x| <= n, |y| <= n}, |Q_n| = (2n+1)^2.
struct Window {
    long long n;
    long long size() const { return (2 * n + 1) * (2 * n + 1); }
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        out.reserve(size());
        for (long long y = -n; y <= n; ++y)
            for (long long x = -n; x <= n; ++x) out.push_back({x, y});
        return out;
    }
};

// u and v are r-separated iff the symmetric difference of their I-sets is
// non-empty.
bool is_r_separated(const PeriodicCode& code, Vertex u, Vertex v, int r);

// Embeds a finite vertex set as a periodic code whose lattice is so large
// (side >= 4r+3 plus the set's span) that no ball queried near the set is
// affected by wraparound; queries there behave as in the infinite grid.
PeriodicCode embed_finite(const std::vector<Vertex>& vs, int r);

// Naive window oracle: checks the identifying property for all vertices of
// Q_n by direct I-set comparison, ignoring periodicity. Test/diagnostic use.
std::optional<VerifyFailure> verify_identifying_window(const PeriodicCode& code, int r,
                                                       long long n);

// Line-oriented code file:
//   lattice <b1x> <b1y> <b2x> <b2y>
//   codeword <x> <y>      (one per line; '#' starts a comment)
// Errors carry the offending line number.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

PeriodicCode parse_code(std::istream& in);
PeriodicCode parse_code_file(const std::string& path);
std::string format_code(const PeriodicCode& code);

// A plain vertex set ("codeword <x> <y>" lines only), used for estimator
// inputs.
std::vector<Vertex> parse_vertex_set(std::istream& in);
std::vector<Vertex> parse_vertex_set_file(const std::string& path);

}  // namespace hexid
