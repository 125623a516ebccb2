#include "ltp/graph.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ltp {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) throw std::invalid_argument("negative vertex count");
  if (edge_count() > kMaxEdges) {
    throw std::invalid_argument("graph has " + std::to_string(edge_count()) +
                                " edges, limit is " + std::to_string(kMaxEdges));
  }
  leaving_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[static_cast<std::size_t>(i)];
    if (e.a < 0 || e.a >= vertex_count_ || e.b < 0 || e.b >= vertex_count_) {
      throw std::invalid_argument("edge " + std::to_string(i) + " has an endpoint out of range");
    }
    leaving_[static_cast<std::size_t>(e.a)] |= std::uint64_t{1} << Arc::forward(i).id();
    leaving_[static_cast<std::size_t>(e.b)] |= std::uint64_t{1} << Arc::backward(i).id();
  }
}

EdgeSet incident_edges(const Graph& g, int edge) {
  const Edge& e = g.edge(edge);
  std::uint32_t bits = 0;
  for (int f = 0; f < g.edge_count(); ++f) {
    if (f == edge) continue;
    const Edge& other = g.edge(f);
    if (other.touches(e.a) || other.touches(e.b)) bits |= std::uint32_t{1} << f;
  }
  return EdgeSet(bits);
}

namespace {

// Walks the sequence from `start`, returning the index of the first edge that
// fails to attach, or t.length() when the whole sequence attaches.
std::size_t attach_from(const Graph& g, const Trail& t, int start) {
  int at = start;
  for (std::size_t i = 0; i < t.length(); ++i) {
    const Edge& e = g.edge(t.edge_ids[i]);
    if (e.a == at) {
      at = e.b;
    } else if (e.b == at) {
      at = e.a;
    } else {
      return i;
    }
  }
  return t.length();
}

}  // namespace

TrailVerdict validate_trail(const Graph& g, const Trail& t) {
  const int m = g.edge_count();
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int id : t.edge_ids) {
    if (id < 0 || id >= m) return {false, "bad edge index " + std::to_string(id)};
    if (seen[static_cast<std::size_t>(id)]) return {false, "duplicate edge " + std::to_string(id)};
    seen[static_cast<std::size_t>(id)] = true;
  }
  if (t.empty()) return {};

  const Edge& first = g.edge(t.edge_ids.front());
  const std::size_t reach_a = attach_from(g, t, first.a);
  const std::size_t reach_b = attach_from(g, t, first.b);
  if (reach_a == t.length() || reach_b == t.length()) return {};

  const std::size_t broken = std::max(reach_a, reach_b);
  const int prev = t.edge_ids[broken - 1];
  const int next = t.edge_ids[broken];
  const Edge& p = g.edge(prev);
  if (!g.edge(next).touches(p.a) && !g.edge(next).touches(p.b)) {
    return {false, "edges " + std::to_string(prev) + " and " + std::to_string(next) +
                       " share no vertex"};
  }
  return {false, "edge " + std::to_string(next) + " does not attach where edge " +
                     std::to_string(prev) + " ends"};
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<long long> parse_integers(std::string_view line, int line_no) {
  std::vector<long long> values;
  std::size_t pos = 0;
  while (true) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    const std::string_view token = line.substr(pos, end - pos);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError(line_no, "non-integer token '" + std::string(token) + "'");
    }
    values.push_back(value);
    pos = end;
  }
  return values;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "missing header");

  const std::vector<long long> header = parse_integers(lines[0], 1);
  if (header.size() != 2) throw ParseError(1, "malformed header, expected \"n m\"");
  const long long n = header[0];
  const long long m = header[1];
  if (n < 0 || m < 0) throw ParseError(1, "malformed header, negative count");
  if (m > kMaxEdges) {
    throw ParseError(1, "edge count " + std::to_string(m) + " exceeds limit " +
                            std::to_string(kMaxEdges));
  }
  if (static_cast<long long>(lines.size()) - 1 != m) {
    throw ParseError(static_cast<int>(lines.size()),
                     "expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::vector<long long> pair = parse_integers(lines[i], line_no);
    if (pair.size() != 2) throw ParseError(line_no, "expected two vertex indices");
    for (long long vertex : pair) {
      if (vertex < 0 || vertex >= n) {
        throw ParseError(line_no, "vertex " + std::to_string(vertex) + " out of range");
      }
    }
    edges.push_back({static_cast<int>(pair[0]), static_cast<int>(pair[1])});
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_graph(g);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

Graph random_graph(int n, int m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_graph: n must be at least 1");
  if (m < 0 || m > kMaxEdges) {
    throw std::invalid_argument("random_graph: m must be in [0, " + std::to_string(kMaxEdges) + "]");
  }
  std::mt19937_64 rng(seed);
  // Unordered pairs {a, b} with a <= b, self pairs included.
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1) / 2;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::uint64_t index = uniform_below(rng, pairs);
    int a = 0;
    while (index >= static_cast<std::uint64_t>(n - a)) {
      index -= static_cast<std::uint64_t>(n - a);
      ++a;
    }
    edges.push_back({a, a + static_cast<int>(index)});
  }
  return Graph(n, std::move(edges));
}

void require_edge_limit(const Graph& g, int limit, std::string_view engine) {
  if (g.edge_count() > limit) {
    throw std::invalid_argument(std::string(engine) + " engine supports at most " +
                                std::to_string(limit) + " edges, got " +
                                std::to_string(g.edge_count()));
  }
}

}  // namespace ltp
