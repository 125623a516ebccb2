#include "ltp/classical_dp.hpp"

#include <algorithm>
#include <cmath>

namespace ltp {

LayerSpec LayerSpec::for_edges(int m, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  if (m < 1) throw std::invalid_argument("layer needs at least one edge");
  const int half = (m + 1) / 2;
  const int quarter = (half + 1) / 2;
  // The epsilon keeps an exactly integral product from rounding up.
  int k = static_cast<int>(std::ceil((1.0 - alpha) * quarter - 1e-9));
  k = std::clamp(k, 1, m);
  return {alpha, k};
}

int LayerSpec::effective_layer(int m) const { return std::min(m, std::max(k_pre, 2)); }

TrailLength get_len(const Graph& g, EdgeSet s, Arc first, Arc last, DpTable& table) {
  if (!s.contains(first.edge()) || !s.contains(last.edge())) return std::nullopt;
  if (auto known = table.find(s, first, last)) return known->length;

  DpEntry entry;
  if (first.edge() == last.edge()) {
    // A trail that starts and ends on the same edge is that edge alone.
    if (first == last) entry.length = 1;
  } else {
    const EdgeSet rest = s.without(last.edge());
    const int joint = g.tail(last);
    for (int y : incident_edges(g, last.edge()) & rest) {
      for (Arc before : {Arc::forward(y), Arc::backward(y)}) {
        if (g.head(before) != joint) continue;
        const TrailLength sub = get_len(g, rest, first, before, table);
        if (sub && (!entry.length || *sub + 1 > *entry.length)) {
          entry.length = *sub + 1;
          entry.predecessor = before;
        }
      }
    }
  }
  table.store(s, first, last, entry);
  return entry.length;
}

TrailLength get_len(const Graph& g, EdgeSet s, int first_edge, int last_edge, DpTable& table) {
  TrailLength best;
  for (Arc first : {Arc::forward(first_edge), Arc::backward(first_edge)}) {
    for (Arc last : {Arc::forward(last_edge), Arc::backward(last_edge)}) {
      best = std::max(best, get_len(g, s, first, last, table));
    }
  }
  return best;
}

std::uint64_t estimate_layer_entries(int m, int k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(m, s)
  for (int s = 1; s <= k && s <= m; ++s) {
    binom = binom * static_cast<std::uint64_t>(m - s + 1) / static_cast<std::uint64_t>(s);
    total += binom * static_cast<std::uint64_t>(4 * s * s);
  }
  return total;
}

DpTable precompute_layer(const Graph& g, const LayerSpec& spec, std::uint64_t entry_budget) {
  const int m = g.edge_count();
  if (m < 1) throw std::invalid_argument("precompute_layer needs at least one edge");
  const int k = std::clamp(spec.k_pre, 1, m);
  const std::uint64_t estimate = estimate_layer_entries(m, k);
  if (estimate > entry_budget) {
    throw CapacityError("precomputed layer needs about " + std::to_string(estimate) +
                        " entries, budget is " + std::to_string(entry_budget));
  }
  DpTable table(m);
  for (int size = 1; size <= k; ++size) {
    for_each_subset_of_size(g.all_edges(), size, [&](EdgeSet s) {
      for (int v : s) {
        for (int u : s) {
          for (Arc first : {Arc::forward(v), Arc::backward(v)}) {
            for (Arc last : {Arc::forward(u), Arc::backward(u)}) get_len(g, s, first, last, table);
          }
        }
      }
    });
  }
  return table;
}

OracleResult full_dp_longest_trail(const Graph& g) {
  require_edge_limit(g, kFullDpMaxEdges, "full DP");
  const int m = g.edge_count();
  OracleResult result;
  if (m == 0) return result;

  // reach[S] holds every arc that can end a trail using exactly the edges S.
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<std::uint64_t> reach(subsets, 0);
  for (int e = 0; e < m; ++e) {
    reach[std::size_t{1} << e] = (std::uint64_t{3} << (2 * e));
  }
  std::vector<std::uint64_t> leaving(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) leaving[static_cast<std::size_t>(v)] = g.arcs_leaving(v);

  std::uint32_t best_set = 0;
  for (std::size_t bits = 1; bits < subsets; ++bits) {
    const std::uint64_t ends = reach[bits];
    if (ends == 0) continue;
    const EdgeSet s(static_cast<std::uint32_t>(bits));
    if (s.size() > EdgeSet(best_set).size()) best_set = s.bits();

    std::uint64_t used_arcs = 0;
    for (int e : s) used_arcs |= std::uint64_t{3} << (2 * e);
    std::uint64_t next = 0;
    for (std::uint64_t rest = ends; rest != 0; rest &= rest - 1) {
      next |= leaving[static_cast<std::size_t>(g.head(Arc(std::countr_zero(rest))))];
    }
    next &= ~used_arcs;
    for (; next != 0; next &= next - 1) {
      const Arc arc(std::countr_zero(next));
      reach[bits | (std::size_t{1} << arc.edge())] |= std::uint64_t{1} << arc.id();
    }
  }

  // Walk back from any arc ending the best set.
  std::vector<int> reversed;
  EdgeSet s(best_set);
  Arc last(std::countr_zero(reach[best_set]));
  while (true) {
    reversed.push_back(last.edge());
    const EdgeSet rest = s.without(last.edge());
    if (rest.empty()) break;
    std::uint64_t candidates = reach[rest.bits()];
    const int joint = g.tail(last);
    for (; candidates != 0; candidates &= candidates - 1) {
      const Arc before(std::countr_zero(candidates));
      if (g.head(before) == joint) {
        last = before;
        break;
      }
    }
    s = rest;
  }
  result.trail.edge_ids.assign(reversed.rbegin(), reversed.rend());
  result.length = static_cast<int>(result.trail.length());
  return result;
}

Trail reconstruct_path(const DpTable& table, EdgeSet s, Arc first, Arc last) {
  std::vector<int> reversed;
  while (true) {
    const auto entry = table.find(s, first, last);
    if (!entry) throw std::out_of_range("reconstruct_path: no table entry for the requested key");
    if (!entry->length) throw std::out_of_range("reconstruct_path: entry has no trail");
    reversed.push_back(last.edge());
    if (!entry->predecessor) break;
    s = s.without(last.edge());
    last = *entry->predecessor;
  }
  if (reversed.back() != first.edge()) {
    throw std::logic_error("reconstruct_path: predecessor chain does not reach the first edge");
  }
  return Trail{{reversed.rbegin(), reversed.rend()}};
}

}  // namespace ltp
