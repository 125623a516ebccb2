#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltp {

// Subset enumeration is 2^m, so every engine refuses graphs past this size.
inline constexpr int kMaxEdges = 30;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Edge {
  int a = 0;
  int b = 0;
  bool is_loop() const { return a == b; }
  bool touches(int vertex) const { return a == vertex || b == vertex; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// An edge traversed in a fixed direction. Arc 2e runs a->b over edge e,
// arc 2e+1 runs b->a. Both arcs of a self-loop describe the same traversal.
class Arc {
 public:
  constexpr Arc() = default;
  constexpr explicit Arc(int id) : id_(static_cast<std::uint8_t>(id)) {}
  static constexpr Arc forward(int edge) { return Arc(2 * edge); }
  static constexpr Arc backward(int edge) { return Arc(2 * edge + 1); }

  constexpr int id() const { return id_; }
  constexpr int edge() const { return id_ >> 1; }
  constexpr bool is_backward() const { return (id_ & 1) != 0; }
  constexpr Arc reversed() const { return Arc(id_ ^ 1); }

  friend constexpr bool operator==(Arc, Arc) = default;

 private:
  std::uint8_t id_ = 0;
};

// Set of edge indices of one graph, m <= 30.
class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  constexpr explicit EdgeSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr EdgeSet single(int edge) { return EdgeSet(std::uint32_t{1} << edge); }
  static constexpr EdgeSet full(int m) {
    return EdgeSet(m >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int edge) const { return ((bits_ >> edge) & 1u) != 0; }
  constexpr EdgeSet with(int edge) const { return EdgeSet(bits_ | (std::uint32_t{1} << edge)); }
  constexpr EdgeSet without(int edge) const { return EdgeSet(bits_ & ~(std::uint32_t{1} << edge)); }
  constexpr bool subset_of(EdgeSet other) const { return (bits_ & ~other.bits_) == 0; }
  // Position of `edge` among the members of this set, counted from the lowest index.
  constexpr int rank(int edge) const {
    return std::popcount(bits_ & ((std::uint32_t{1} << edge) - 1));
  }

  friend constexpr EdgeSet operator|(EdgeSet x, EdgeSet y) { return EdgeSet(x.bits_ | y.bits_); }
  friend constexpr EdgeSet operator&(EdgeSet x, EdgeSet y) { return EdgeSet(x.bits_ & y.bits_); }
  friend constexpr EdgeSet operator-(EdgeSet x, EdgeSet y) { return EdgeSet(x.bits_ & ~y.bits_); }
  friend constexpr bool operator==(EdgeSet, EdgeSet) = default;

  class iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint32_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const { return {begin(), end()}; }

 private:
  std::uint32_t bits_ = 0;
};

// Next set with the same popcount in lexicographic (numeric) order.
// Undefined for 0; callers stop once the result leaves their universe.
template <class Word>
constexpr Word next_same_popcount(Word x) {
  const Word low = x & (~x + 1);
  const Word ripple = x + low;
  return ripple | (((x ^ ripple) >> 2) / low);
}

// Calls fn(EdgeSet) for every k-subset of `universe`, in increasing order of
// the compressed index.
template <class Fn>
void for_each_subset_of_size(EdgeSet universe, int k, Fn&& fn) {
  const int n = universe.size();
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(EdgeSet{});
    return;
  }
  const std::vector<int> members = universe.to_vector();
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t pick = (std::uint64_t{1} << k) - 1; pick < limit;) {
    std::uint32_t bits = 0;
    for (std::uint64_t rest = pick; rest != 0; rest &= rest - 1) {
      bits |= std::uint32_t{1} << members[std::countr_zero(rest)];
    }
    fn(EdgeSet(bits));
    pick = next_same_popcount(pick);
  }
}

// Ordered edge indices of an edge-simple walk. Orientation is implied by the
// shared vertices and recovered by validate_trail.
struct Trail {
  std::vector<int> edge_ids;

  std::size_t length() const { return edge_ids.size(); }
  bool empty() const { return edge_ids.empty(); }
  friend bool operator==(const Trail&, const Trail&) = default;
};

class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }
  EdgeSet all_edges() const { return EdgeSet::full(edge_count()); }

  int tail(Arc arc) const {
    const Edge& e = edge(arc.edge());
    return arc.is_backward() ? e.b : e.a;
  }
  int head(Arc arc) const {
    const Edge& e = edge(arc.edge());
    return arc.is_backward() ? e.a : e.b;
  }

  // Arcs leaving `vertex`, as a bitmask over arc ids (2m <= 60 bits).
  std::uint64_t arcs_leaving(int vertex) const {
    return leaving_[static_cast<std::size_t>(vertex)];
  }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.vertex_count_ == y.vertex_count_ && x.edges_ == y.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> leaving_;
};

// Edges other than `edge` sharing at least one endpoint with it.
EdgeSet incident_edges(const Graph& g, int edge);

struct TrailVerdict {
  bool valid = true;
  std::string violation;
  explicit operator bool() const { return valid; }
};

TrailVerdict validate_trail(const Graph& g, const Trail& t);

Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

Graph random_graph(int n, int m, std::uint64_t seed);

// Uniform integer in [0, bound) by rejection; stable across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Throws std::invalid_argument when m exceeds `limit`.
void require_edge_limit(const Graph& g, int limit, std::string_view engine);

}  // namespace ltp
