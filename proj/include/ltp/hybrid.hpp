#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <map>
#include <vector>

#include "ltp/classical_dp.hpp"
#include "ltp/dp_table.hpp"
#include "ltp/graph.hpp"
#include "ltp/qmax.hpp"

namespace ltp {

inline constexpr int kHybridDeterministicMaxEdges = 20;
inline constexpr int kHybridStochasticMaxEdges = 16;

enum class SearchMode { deterministic, stochastic };

struct HybridConfig {
  double alpha = kDefaultAlpha;
  SearchMode mode = SearchMode::deterministic;
  // 0 selects the default of 2m repeats at every level.
  int repeats_per_level = 0;
  std::uint64_t seed = 0;
  double budget_constant = kDefaultBudgetConstant;

  int repeats_for(int m) const { return repeats_per_level > 0 ? repeats_per_level : 2 * m; }
};

// Decomposition tree of a solved L(set, first, last). Leaves are table
// lookups (or the single-edge case); a node splits the set into
// left_set with trail first..pivot and (set - left_set) + pivot with trail
// pivot..last.
struct SplitWitness {
  EdgeSet set;
  Arc first;
  Arc last;
  EdgeSet left_set;
  Arc pivot;
  std::vector<SplitWitness> halves;

  bool is_leaf() const { return halves.empty(); }
  int depth() const;
};

struct NodeOutcome {
  TrailLength value;
  SplitWitness witness;
};

// Nested maximum finding over subset splits, above a frozen precomputed
// layer. Each distinct (set, first, last) is searched once per instance;
// repeated uses re-charge the recorded query cost, so the ledger matches a
// search that recomputes every nested call.
class SplitSearch {
 public:
  static constexpr int kMaxLevels = 8;
  using LevelCosts = std::array<std::uint64_t, kMaxLevels>;

  SplitSearch(const Graph& g, const DpTable& table, int layer, const HybridConfig& cfg);

  // L(s, first, last), charging the search's queries from `level` down.
  TrailLength evaluate(EdgeSet s, Arc first, Arc last, int level);
  NodeOutcome solve(EdgeSet s, Arc first, Arc last, int level);
  SplitWitness witness(EdgeSet s, Arc first, Arc last) const;

  const QueryLedger& ledger() const { return ledger_; }
  int layer() const { return layer_; }
  // False once a stochastic search returned less than the best value in its
  // realized sequence.
  bool nominal() const { return nominal_; }

  // First-half size for splitting a set of `size` edges.
  static int split_size(int size) { return std::clamp(size / 2, 2, size - 1); }

 private:
  static constexpr std::int8_t kUnknown = -2;
  static constexpr std::int8_t kNone = -1;

  struct Node {
    std::int8_t value = kUnknown;
    std::uint8_t pivot = 0;
    std::uint32_t left_set = 0;  // 0 marks a leaf
    std::uint32_t cost_id = 0;
  };

  struct Candidate {
    std::uint32_t left_set;
    Arc pivot;
  };

  // Position of an arc within its set's block row or column.
  static std::size_t slot(EdgeSet s, Arc a) {
    return 2 * static_cast<std::size_t>(s.rank(a.edge())) + (a.is_backward() ? 1 : 0);
  }
  std::size_t block_for(EdgeSet s);
  std::size_t node_index(EdgeSet s, Arc first, Arc last);
  std::size_t find_node(EdgeSet s, Arc first, Arc last) const;
  void compute(std::size_t index, EdgeSet s, Arc first, Arc last);
  std::uint32_t intern(const LevelCosts& costs);
  static TrailLength decode(std::int8_t v) { return v >= 0 ? TrailLength(v) : std::nullopt; }

  const Graph& g_;
  const DpTable& table_;
  int layer_;
  HybridConfig cfg_;
  int repeats_;
  std::mt19937_64 rng_;
  QueryLedger ledger_;
  bool nominal_ = true;

  std::vector<std::int64_t> block_of_set_;
  std::vector<Node> nodes_;
  std::vector<LevelCosts> costs_;
  std::map<LevelCosts, std::uint32_t> cost_lookup_;
};

struct SolveResult {
  int length = 0;
  Trail trail;
  QueryLedger ledger;
  std::size_t classical_entries = 0;
  bool success_nominal = true;
  int layer = 0;
  int depth = 0;
};

// Classical layer precomputation, then the split search for every oriented
// (first, last) pair; the outer maximum over pairs is classical.
SolveResult solve_hybrid(const Graph& g, const HybridConfig& cfg);

// Concatenates the halves of every node, dropping the duplicated pivot.
Trail reconstruct_from_witness(const SplitWitness& w, const DpTable& table);

struct CostReport {
  int m = 0;
  double alpha = kDefaultAlpha;
  int classical_set_size = 0;  // round((1 - alpha) m / 4)
  int layer_set_size = 0;      // the ceiling-based size the solver precomputes
  int alpha_set_size = 0;      // round(alpha m / 4)
  double classical_log2 = 0;
  double quantum_log2 = 0;
  double classical_exponent = 0;  // log2(count) / m
  double quantum_exponent = 0;
  double balance_gap = 0;
  std::optional<double> classical_count;  // absent when it overflows a double
  std::optional<double> quantum_count;
};

CostReport theoretical_costs(int m, double alpha = kDefaultAlpha);

}  // namespace ltp
