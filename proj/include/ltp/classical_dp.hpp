#pragma once

#include <cstdint>
#include <stdexcept>

#include "ltp/dp_table.hpp"
#include "ltp/graph.hpp"
#include "ltp/oracle.hpp"

namespace ltp {

inline constexpr double kDefaultAlpha = 0.055;
inline constexpr int kFullDpMaxEdges = 20;
inline constexpr std::uint64_t kDefaultEntryBudget = std::uint64_t{1} << 28;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cardinality of the classically precomputed layer:
// k_pre = ceil((1 - alpha) * ceil(ceil(m / 2) / 2)).
struct LayerSpec {
  double alpha = kDefaultAlpha;
  int k_pre = 1;

  static LayerSpec for_edges(int m, double alpha = kDefaultAlpha);

  // Layer used by the split search. Splitting a set of size s needs s >= 3,
  // so the recursion bottoms out at no less than 2 edges.
  int effective_layer(int m) const;
};

// Shared pivot edge counted once; none absorbs.
constexpr TrailLength combine(TrailLength a, TrailLength b) {
  if (!a || !b) return std::nullopt;
  return *a + *b - 1;
}

// L(S, first, last) by the one-edge-shorter recurrence, memoized in `table`.
TrailLength get_len(const Graph& g, EdgeSet s, Arc first, Arc last, DpTable& table);

// Best over both traversal directions of the two end edges.
TrailLength get_len(const Graph& g, EdgeSet s, int first_edge, int last_edge, DpTable& table);

// Fills L for every set of size <= spec.k_pre and every oriented end pair.
DpTable precompute_layer(const Graph& g, const LayerSpec& spec,
                         std::uint64_t entry_budget = kDefaultEntryBudget);

// Upper bound on the entries precompute_layer would store.
std::uint64_t estimate_layer_entries(int m, int k);

// Exact O*(2^m) baseline over (exact edge set, last arc) reachability.
OracleResult full_dp_longest_trail(const Graph& g);

// Follows predecessor witnesses from (S, first, last) back to the base case.
Trail reconstruct_path(const DpTable& table, EdgeSet s, Arc first, Arc last);

}  // namespace ltp
