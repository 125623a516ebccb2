#include "ltp/oracle.hpp"

#include <algorithm>
#include <unordered_set>

namespace ltp {

namespace {

// Revisiting (used, key) reaches exactly the same extensions again, so the
// search skips it.
class VisitedStates {
 public:
  explicit VisitedStates(int key_count) : key_count_(static_cast<std::uint64_t>(key_count)) {}
  bool insert(EdgeSet used, int key) {
    return seen_.insert(std::uint64_t{used.bits()} * key_count_ + static_cast<std::uint64_t>(key))
        .second;
  }

 private:
  std::uint64_t key_count_;
  std::unordered_set<std::uint64_t> seen_;
};

struct LongestSearch {
  const Graph& g;
  VisitedStates visited;
  std::vector<int> stack;
  std::vector<int> best;

  void extend(EdgeSet used, int at) {
    if (!visited.insert(used, at)) return;
    if (stack.size() > best.size()) best = stack;
    for (int f : g.all_edges() - used) {
      const Edge& e = g.edge(f);
      if (!e.touches(at)) continue;
      stack.push_back(f);
      extend(used.with(f), e.a == at ? e.b : e.a);
      stack.pop_back();
    }
  }
};

struct ConstrainedSearch {
  const Graph& g;
  EdgeSet allowed;
  Arc last;
  VisitedStates visited;
  TrailLength best;

  void extend(EdgeSet used, Arc end) {
    if (!visited.insert(used, end.id())) return;
    if (end == last) best = std::max(best, TrailLength(used.size()));
    const std::uint64_t out = g.arcs_leaving(g.head(end));
    for (std::uint64_t rest = out; rest != 0; rest &= rest - 1) {
      const Arc next(std::countr_zero(rest));
      if (!allowed.contains(next.edge()) || used.contains(next.edge())) continue;
      extend(used.with(next.edge()), next);
    }
  }
};

}  // namespace

OracleResult longest_trail_bruteforce(const Graph& g) {
  require_edge_limit(g, kBruteForceMaxEdges, "brute-force");
  LongestSearch search{g, VisitedStates(std::max(1, g.vertex_count())), {}, {}};
  for (int start = 0; start < g.vertex_count(); ++start) search.extend(EdgeSet{}, start);
  OracleResult result;
  result.length = static_cast<int>(search.best.size());
  result.trail.edge_ids = std::move(search.best);
  return result;
}

TrailLength constrained_longest_bruteforce(const Graph& g, EdgeSet allowed, Arc first, Arc last) {
  require_edge_limit(g, kBruteForceMaxEdges, "brute-force");
  if (!allowed.contains(first.edge()) || !allowed.contains(last.edge())) return std::nullopt;
  ConstrainedSearch search{g, allowed, last, VisitedStates(2 * g.edge_count()), std::nullopt};
  search.extend(EdgeSet::single(first.edge()), first);
  return search.best;
}

TrailLength constrained_longest_bruteforce(const Graph& g, EdgeSet allowed, int first_edge,
                                           int last_edge) {
  TrailLength best;
  for (Arc first : {Arc::forward(first_edge), Arc::backward(first_edge)}) {
    for (Arc last : {Arc::forward(last_edge), Arc::backward(last_edge)}) {
      best = std::max(best, constrained_longest_bruteforce(g, allowed, first, last));
    }
  }
  return best;
}

}  // namespace ltp
