#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hexid/codes.hpp"
#include "hexid/rational.hpp"

namespace hexid {

struct SearchConfig {
    int r = 2;
    long long max_area = 8;
    long long node_budget = 50'000'000;  // DFS nodes per lattice
    std::optional<Rational> target_density;  // only look below this density
    int threads = 1;
};

struct AreaResult {
    long long area = 0;
    int min_count = -1;  // -1: no identifying code found at this area
    std::optional<PeriodicCode> witness;
    bool exhausted = true;  // full subset space explored (after pruning)
};

struct SearchFrontier {
    std::map<long long, AreaResult> by_area;
    bool any_budget_hit = false;
};

// All even-coordinate-sum sublattices with area <= max_area, one HNF
// representative each, in deterministic order.
std::vector<Lattice> enumerate_lattices(long long max_area);

// Exhaustive (budgeted) minimum-codeword search per lattice, merged per
// area. Deterministic for a fixed config, independent of thread count.
SearchFrontier search_min_density(const SearchConfig& config);

// Per-lattice result, exposed for oracle tests.
struct LatticeResult {
    int min_count = -1;
    std::optional<PeriodicCode> witness;
    bool exhausted = true;
};
LatticeResult search_lattice(const Lattice& lat, int r, long long node_budget,
                             int max_count);

std::string frontier_report(const SearchFrontier& frontier, bool tsv);

}  // namespace hexid
