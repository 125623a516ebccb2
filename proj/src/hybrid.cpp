#include "ltp/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ltp {

namespace {

std::uint64_t binomial_count(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

int SplitWitness::depth() const {
  int deepest = 0;
  for (const SplitWitness& half : halves) deepest = std::max(deepest, half.depth() + 1);
  return deepest;
}

SplitSearch::SplitSearch(const Graph& g, const DpTable& table, int layer, const HybridConfig& cfg)
    : g_(g),
      table_(table),
      layer_(layer),
      cfg_(cfg),
      repeats_(cfg.repeats_for(g.edge_count())),
      rng_(cfg.seed),
      block_of_set_(std::size_t{1} << g.edge_count(), -1) {
  if (g.edge_count() > kHybridDeterministicMaxEdges) {
    throw std::invalid_argument("split search supports at most " +
                                std::to_string(kHybridDeterministicMaxEdges) + " edges");
  }
  if (layer < 1) throw std::invalid_argument("split search needs a layer of at least one edge");
  intern(LevelCosts{});
}

std::uint32_t SplitSearch::intern(const LevelCosts& costs) {
  if (cfg_.mode == SearchMode::stochastic && !costs_.empty()) {
    costs_.push_back(costs);
    return static_cast<std::uint32_t>(costs_.size() - 1);
  }
  const auto [it, inserted] = cost_lookup_.emplace(costs, static_cast<std::uint32_t>(costs_.size()));
  if (inserted) costs_.push_back(costs);
  return it->second;
}

std::size_t SplitSearch::find_node(EdgeSet s, Arc first, Arc last) const {
  const std::int64_t block = block_of_set_[s.bits()];
  if (block < 0) throw std::out_of_range("split search has no entry for the requested set");
  const std::size_t width = 2 * static_cast<std::size_t>(s.size());
  return static_cast<std::size_t>(block) + slot(s, first) * width + slot(s, last);
}

std::size_t SplitSearch::block_for(EdgeSet s) {
  if (block_of_set_[s.bits()] < 0) {
    const std::size_t width = 2 * static_cast<std::size_t>(s.size());
    block_of_set_[s.bits()] = static_cast<std::int64_t>(nodes_.size());
    nodes_.resize(nodes_.size() + width * width);
  }
  return static_cast<std::size_t>(block_of_set_[s.bits()]);
}

std::size_t SplitSearch::node_index(EdgeSet s, Arc first, Arc last) {
  const std::size_t width = 2 * static_cast<std::size_t>(s.size());
  const std::size_t index = block_for(s) + slot(s, first) * width + slot(s, last);
  if (nodes_[index].value == kUnknown) compute(index, s, first, last);
  return index;
}

void SplitSearch::compute(std::size_t index, EdgeSet s, Arc first, Arc last) {
  Node node;
  if (first.edge() == last.edge()) {
    node.value = first == last ? 1 : kNone;
    nodes_[index] = node;
    return;
  }
  if (s.size() <= layer_) {
    const auto entry = table_.find(s, first, last);
    if (!entry) throw std::logic_error("precomputed layer is missing an entry below its size");
    node.value = entry->length ? static_cast<std::int8_t>(*entry->length) : kNone;
    nodes_[index] = node;
    return;
  }

  const bool stochastic = cfg_.mode == SearchMode::stochastic;
  const int h = split_size(s.size());
  LevelCosts nested{};
  std::uint64_t candidates = 0;
  TrailLength best;
  Candidate best_candidate{0, Arc()};
  std::vector<TrailLength> values;
  std::vector<Candidate> listed;

  if (stochastic) {
    const std::uint64_t expected = 2 * binomial_count(s.size() - 2, h - 2) +
                                   2 * static_cast<std::uint64_t>(h) * binomial_count(s.size() - 2, h - 1);
    values.reserve(expected);
    listed.reserve(expected);
  }

  for_each_subset_of_size(s.without(first.edge()), h - 1, [&](EdgeSet rest) {
    const EdgeSet left = rest.with(first.edge());
    const bool last_on_left = left.contains(last.edge());
    const std::size_t left_block = block_for(left);
    const std::size_t left_width = 2 * static_cast<std::size_t>(h);
    const std::size_t left_row = left_block + slot(left, first) * left_width;
    for (int y : left) {
      // The right half must still hold the last edge.
      if (last_on_left && y != last.edge()) continue;
      const EdgeSet right = (s - left).with(y);
      const std::size_t right_block = block_for(right);
      const std::size_t right_width = 2 * static_cast<std::size_t>(right.size());
      const std::size_t right_col = slot(right, last);
      const std::size_t left_col = slot(left, Arc::forward(y));
      const std::size_t right_row = slot(right, Arc::forward(y));
      for (int d = 0; d < 2; ++d) {
        const Arc pivot(2 * y + d);
        const std::size_t li = left_row + left_col + static_cast<std::size_t>(d);
        const std::size_t ri = right_block + (right_row + static_cast<std::size_t>(d)) * right_width + right_col;
        if (nodes_[li].value == kUnknown) compute(li, left, first, pivot);
        if (nodes_[ri].value == kUnknown) compute(ri, right, pivot, last);
        const TrailLength value = combine(decode(nodes_[li].value), decode(nodes_[ri].value));
        const LevelCosts& lc = costs_[nodes_[li].cost_id];
        const LevelCosts& rc = costs_[nodes_[ri].cost_id];
        for (int k = 0; k < kMaxLevels; ++k) nested[static_cast<std::size_t>(k)] += lc[k] + rc[k];
        ++candidates;
        if (stochastic) {
          values.push_back(value);
          listed.push_back({left.bits(), pivot});
        } else if (value > best) {
          best = value;
          best_candidate = {left.bits(), pivot};
        }
      }
    }
  });

  std::uint64_t own_queries = candidates;
  if (stochastic) {
    const RealizedValues realized(std::move(values));
    const QmaxOutcome outcome = boosted_qmax(realized, repeats_, rng_, cfg_.budget_constant);
    own_queries = outcome.queries;
    best = outcome.value;
    if (outcome.witness) best_candidate = listed[*outcome.witness];
    if (outcome.value != realized.max()) nominal_ = false;
  }

  if (nested[kMaxLevels - 1] != 0) throw std::logic_error("split recursion exceeds ledger depth");
  LevelCosts own{};
  own[0] = own_queries;
  for (int k = 0; k + 1 < kMaxLevels; ++k) {
    const long double charged =
        stochastic ? std::round(static_cast<long double>(own_queries) * nested[k] / candidates)
                   : static_cast<long double>(nested[k]);
    own[static_cast<std::size_t>(k) + 1] = static_cast<std::uint64_t>(charged);
  }

  node.value = best ? static_cast<std::int8_t>(*best) : kNone;
  node.left_set = best ? best_candidate.left_set : 0;
  node.pivot = static_cast<std::uint8_t>(best_candidate.pivot.id());
  node.cost_id = intern(own);
  nodes_[index] = node;
}

TrailLength SplitSearch::evaluate(EdgeSet s, Arc first, Arc last, int level) {
  if (!s.contains(first.edge()) || !s.contains(last.edge())) return std::nullopt;
  const std::size_t index = node_index(s, first, last);
  ledger_.charge_relative(costs_[nodes_[index].cost_id], level);
  return decode(nodes_[index].value);
}

NodeOutcome SplitSearch::solve(EdgeSet s, Arc first, Arc last, int level) {
  NodeOutcome out;
  out.value = evaluate(s, first, last, level);
  if (out.value) out.witness = witness(s, first, last);
  return out;
}

SplitWitness SplitSearch::witness(EdgeSet s, Arc first, Arc last) const {
  const Node& node = nodes_[find_node(s, first, last)];
  if (node.value == kUnknown) throw std::out_of_range("split search entry was never computed");
  SplitWitness w{s, first, last, EdgeSet{}, Arc(), {}};
  if (node.left_set == 0) return w;
  w.left_set = EdgeSet(node.left_set);
  w.pivot = Arc(node.pivot);
  const EdgeSet right = (s - w.left_set).with(w.pivot.edge());
  w.halves.push_back(witness(w.left_set, first, w.pivot));
  w.halves.push_back(witness(right, w.pivot, last));
  return w;
}

Trail reconstruct_from_witness(const SplitWitness& w, const DpTable& table) {
  if (w.is_leaf()) {
    if (w.first.edge() == w.last.edge()) {
      if (w.first != w.last) throw std::logic_error("witness leaf reverses its only edge");
      return Trail{{w.first.edge()}};
    }
    return reconstruct_path(table, w.set, w.first, w.last);
  }
  if (w.halves.size() != 2) throw std::logic_error("witness node must have two halves");
  const SplitWitness& left = w.halves[0];
  const SplitWitness& right = w.halves[1];
  if (left.last != w.pivot || right.first != w.pivot || left.first != w.first ||
      right.last != w.last) {
    throw std::logic_error("witness halves disagree on the pivot edge");
  }
  Trail head = reconstruct_from_witness(left, table);
  const Trail tail = reconstruct_from_witness(right, table);
  if (head.empty() || tail.empty() || head.edge_ids.back() != w.pivot.edge() ||
      tail.edge_ids.front() != w.pivot.edge()) {
    throw std::logic_error("witness halves do not meet at the pivot edge");
  }
  head.edge_ids.insert(head.edge_ids.end(), tail.edge_ids.begin() + 1, tail.edge_ids.end());
  return head;
}

SolveResult solve_hybrid(const Graph& g, const HybridConfig& cfg) {
  const int m = g.edge_count();
  const bool stochastic = cfg.mode == SearchMode::stochastic;
  require_edge_limit(g, stochastic ? kHybridStochasticMaxEdges : kHybridDeterministicMaxEdges,
                     stochastic ? "stochastic hybrid" : "deterministic hybrid");
  if (cfg.repeats_per_level < 0) throw std::invalid_argument("repeats must be positive");
  SolveResult result;
  if (m == 0) return result;

  const LayerSpec nominal = LayerSpec::for_edges(m, cfg.alpha);
  const int layer = nominal.effective_layer(m);
  const DpTable table = precompute_layer(g, LayerSpec{cfg.alpha, layer});
  result.classical_entries = table.size();
  result.layer = layer;

  SplitSearch search(g, table, layer, cfg);
  const EdgeSet all = g.all_edges();
  TrailLength best;
  Arc best_first;
  Arc best_last;
  for (int a = 0; a < 2 * m; ++a) {
    for (int b = 0; b < 2 * m; ++b) {
      const TrailLength value = search.evaluate(all, Arc(a), Arc(b), 0);
      if (value > best) {
        best = value;
        best_first = Arc(a);
        best_last = Arc(b);
      }
    }
  }

  result.ledger = search.ledger();
  result.success_nominal = search.nominal();
  if (best) {
    const SplitWitness w = search.witness(all, best_first, best_last);
    result.trail = reconstruct_from_witness(w, table);
    result.length = *best;
    result.depth = w.depth();
  }
  return result;
}

namespace {

double log2_binomial(double n, double k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         std::numbers::ln2;
}

std::optional<double> finite_power_of_two(double log2_value) {
  const double value = std::exp2(log2_value);
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

CostReport theoretical_costs(int m, double alpha) {
  if (m < 4) throw std::invalid_argument("cost report needs m >= 4");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  CostReport report;
  report.m = m;
  report.alpha = alpha;
  const double md = m;
  report.classical_set_size = static_cast<int>(std::lround((1.0 - alpha) * md / 4.0));
  report.alpha_set_size = static_cast<int>(std::lround(alpha * md / 4.0));
  report.layer_set_size = LayerSpec::for_edges(m, alpha).k_pre;

  report.classical_log2 = log2_binomial(md, report.classical_set_size);
  report.quantum_log2 = 0.5 * (log2_binomial(md, md / 2.0) + log2_binomial(md / 2.0, md / 4.0) +
                               log2_binomial(md / 4.0, report.alpha_set_size));
  report.classical_exponent = report.classical_log2 / md;
  report.quantum_exponent = report.quantum_log2 / md;
  report.balance_gap = std::abs(report.classical_exponent - report.quantum_exponent);
  report.classical_count = finite_power_of_two(report.classical_log2);
  if (report.classical_count) report.classical_count = std::round(*report.classical_count);
  report.quantum_count = finite_power_of_two(report.quantum_log2);
  return report;
}

}  // namespace ltp
