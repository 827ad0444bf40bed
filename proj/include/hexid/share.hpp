#pragma once

#include <stdexcept>
#include <vector>

#include "hexid/codes.hpp"
#include "hexid/rational.hpp"

namespace hexid {

// Raised when a share is requested for a codeword whose ball contains a
// vertex with empty I-set (the code does not cover it).
struct ShareUndefined : std::runtime_error {
    Vertex vertex;
    explicit ShareUndefined(Vertex v)
        : std::runtime_error("share undefined: empty I-set at (" + std::to_string(v.x) +
                             "," + std::to_string(v.y) + ")"),
          vertex(v) {}
};

// s_r(c) = sum over u in B_r(c) of 1/|I_r(u)|, exact.
Rational share(const PeriodicCode& code, Vertex c, int r);

// Estimator: partition B_r(c) by the value of I_r(D;.); a class with I-set
// size k and multiplicity m contributes 1/k + (m-1)/(k+1). Vertices whose
// I_r(D;.) is empty must be covered by codewords outside D: the first can be
// covered once, the rest at least twice, so such a class contributes
// 1 + (m-1)/2. D need not cover the ball; c must belong to D.
Rational share_upper_bound(const std::vector<Vertex>& D, Vertex c, int r);

struct ShareReport {
    std::vector<std::pair<Vertex, Rational>> shares;  // per domain codeword, sorted
    Rational max_share;
    Rational avg_share;
    Rational sum;  // over one fundamental domain
};

ShareReport share_report(const PeriodicCode& code, int r);

}  // namespace hexid
