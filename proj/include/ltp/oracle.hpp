#pragma once

#include <optional>

#include "ltp/graph.hpp"

namespace ltp {

// Length of a trail, or nullopt when no trail satisfies the constraints.
// nullopt orders below every length and absorbs arithmetic.
using TrailLength = std::optional<int>;

inline constexpr int kBruteForceMaxEdges = 14;

struct OracleResult {
  int length = 0;
  Trail trail;
};

// Exhaustive depth-first extension over (used edges, walk end). Ground truth
// for every other engine.
OracleResult longest_trail_bruteforce(const Graph& g);

// Longest trail using only edges of `allowed`, whose first and last
// traversals are exactly the given arcs.
TrailLength constrained_longest_bruteforce(const Graph& g, EdgeSet allowed, Arc first, Arc last);

// Same, with the first and last edges in either direction.
TrailLength constrained_longest_bruteforce(const Graph& g, EdgeSet allowed, int first_edge,
                                           int last_edge);

}  // namespace ltp
