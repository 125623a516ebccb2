#include <doctest.h>

#include <sstream>

#include "ltp/classical_dp.hpp"
#include "test_support.hpp"

using namespace ltp;
using namespace ltp::testing;

TEST_CASE("combine counts the pivot once") {
  CHECK(combine(2, 3) == 4);
  CHECK(combine(1, 1) == 1);
  CHECK(combine(std::nullopt, 5) == std::nullopt);
  CHECK(combine(5, std::nullopt) == std::nullopt);
}

TEST_CASE("LayerSpec ceiling formula") {
  CHECK(LayerSpec::for_edges(20).k_pre == 5);   // ceil(0.945 * 5)
  CHECK(LayerSpec::for_edges(12).k_pre == 3);   // ceil(0.945 * 3)
  CHECK(LayerSpec::for_edges(14).k_pre == 4);   // ceil(0.945 * ceil(7/2))
  CHECK(LayerSpec::for_edges(4).k_pre == 1);
  CHECK(LayerSpec::for_edges(1).k_pre == 1);
  CHECK(LayerSpec::for_edges(4).effective_layer(4) == 2);
  CHECK(LayerSpec::for_edges(1).effective_layer(1) == 1);
  CHECK(LayerSpec::for_edges(30).k_pre == 8);
  CHECK_THROWS_AS(LayerSpec::for_edges(10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(LayerSpec::for_edges(0), std::invalid_argument);
}

TEST_CASE("get_len examples") {
  DpTable table(3);
  CHECK(get_len(triangle(), EdgeSet(0b111), 0, 2, table) == 3);
  CHECK(get_len(triangle(), EdgeSet(0b111), 0, 0, table) == 1);
  for (int v = 0; v < 3; ++v) CHECK(get_len(triangle(), EdgeSet::single(v), v, v, table) == 1);

  DpTable apart(2);
  CHECK(get_len(disjoint_pair(), EdgeSet(0b11), 0, 1, apart) == std::nullopt);
  // Membership is checked before any recursion.
  CHECK(get_len(triangle(), EdgeSet(0b011), 0, 2, table) == std::nullopt);
}

TEST_CASE("get_len respects walk orientation") {
  DpTable table(3);
  CHECK(get_len(star3(), EdgeSet(0b111), 0, 2, table) == 2);
  // The arc form rejects a pair that cannot be joined head to tail.
  CHECK(get_len(star3(), EdgeSet(0b011), Arc::forward(0), Arc::backward(1), table) == std::nullopt);
  CHECK(get_len(star3(), EdgeSet(0b011), Arc::backward(0), Arc::forward(1), table) == 2);
}

TEST_CASE("get_len equals the brute-force oracle on every key") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Graph g = random_graph(2 + static_cast<int>(seed % 5), 1 + static_cast<int>(seed % 7), seed);
    const int m = g.edge_count();
    DpTable table(m);
    for (std::uint32_t bits = 1; bits < (1u << m); ++bits) {
      const EdgeSet s(bits);
      for (int a = 0; a < 2 * m; ++a) {
        for (int b = 0; b < 2 * m; ++b) {
          const TrailLength l = get_len(g, s, Arc(a), Arc(b), table);
          REQUIRE(l == constrained_longest_bruteforce(g, s, Arc(a), Arc(b)));
          CHECK(l == get_len(g, s, Arc(b).reversed(), Arc(a).reversed(), table));
          if (l) {
            const Trail t = reconstruct_path(table, s, Arc(a), Arc(b));
            CHECK(validate_trail(g, t));
            CHECK(t.length() == static_cast<std::size_t>(*l));
            CHECK(t.edge_ids.front() == Arc(a).edge());
            CHECK(t.edge_ids.back() == Arc(b).edge());
          }
        }
      }
      for (int v : s) {
        for (int u : s) CHECK(get_len(g, s, v, u, table) == get_len(g, s, u, v, table));
      }
    }
  }
}

TEST_CASE("reconstruct_path") {
  DpTable table(3);
  REQUIRE(get_len(triangle(), EdgeSet(0b111), Arc::forward(0), Arc::forward(2), table) == 3);
  const Trail t = reconstruct_path(table, EdgeSet(0b111), Arc::forward(0), Arc::forward(2));
  CHECK(t.edge_ids == std::vector<int>{0, 1, 2});

  get_len(triangle(), EdgeSet::single(1), Arc::forward(1), Arc::forward(1), table);
  CHECK(reconstruct_path(table, EdgeSet::single(1), Arc::forward(1), Arc::forward(1)).edge_ids ==
        std::vector<int>{1});

  CHECK_THROWS_AS(reconstruct_path(table, EdgeSet(0b110), Arc::forward(1), Arc::forward(2)),
                  std::out_of_range);
}

TEST_CASE("precompute_layer coverage and counts") {
  const Graph tri = triangle();
  const DpTable table = precompute_layer(tri, LayerSpec{kDefaultAlpha, 2});
  CHECK(table.find(EdgeSet(0b011), Arc::forward(0), Arc::forward(1))->length == 2);
  CHECK(table.find(EdgeSet(0b011), Arc::backward(0), Arc::forward(1))->length == std::nullopt);
  table.for_each([&](EdgeSet s, Arc a, Arc b, const DpEntry& e) {
    CHECK(s.size() <= 2);
    CHECK(e.length == constrained_longest_bruteforce(tri, s, a, b));
  });
  CHECK(table.size_with_cardinality(2) == 3 * 16);
  CHECK(table.size_with_cardinality(1) == 3 * 4);

  const Graph g = random_graph(5, 8, 3);
  const DpTable base = precompute_layer(g, LayerSpec{kDefaultAlpha, 1});
  CHECK(base.size() == 8 * 4);
  for (int v = 0; v < 8; ++v) {
    CHECK(base.find(EdgeSet::single(v), Arc::forward(v), Arc::forward(v))->length == 1);
    CHECK(base.find(EdgeSet::single(v), Arc::forward(v), Arc::backward(v))->length == std::nullopt);
  }

  const DpTable pairs = precompute_layer(g, LayerSpec{kDefaultAlpha, 2});
  CHECK(pairs.size_with_cardinality(2) == binomial(8, 2) * 16);
  CHECK(estimate_layer_entries(8, 2) == 8 * 4 + binomial(8, 2) * 16);
}

TEST_CASE("precompute_layer fails fast over its budget") {
  const Graph g = random_graph(6, 20, 9);
  CHECK_THROWS_AS(precompute_layer(g, LayerSpec{kDefaultAlpha, 5}, 1000), CapacityError);
}

TEST_CASE("full_dp_longest_trail") {
  CHECK(full_dp_longest_trail(k4()).length == 5);
  CHECK(full_dp_longest_trail(Graph(2, {{0, 1}})).length == 1);
  const OracleResult empty = full_dp_longest_trail(Graph(1, {}));
  CHECK(empty.length == 0);
  CHECK(empty.trail.empty());
  CHECK_THROWS_AS(full_dp_longest_trail(random_graph(5, 21, 0)), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = random_graph(2 + static_cast<int>(seed % 6), 1 + static_cast<int>(seed % 12), seed);
    const OracleResult dp = full_dp_longest_trail(g);
    CHECK(dp.length == longest_trail_bruteforce(g).length);
    CHECK(validate_trail(g, dp.trail));
    CHECK(dp.trail.length() == static_cast<std::size_t>(dp.length));
  }
}

TEST_CASE("spill records round-trip") {
  const Graph g = random_graph(4, 7, 11);
  const DpTable table = precompute_layer(g, LayerSpec{kDefaultAlpha, 3});
  std::stringstream buffer;
  table.write_spill(buffer);
  // 8-byte set field + four 16-bit fields.
  CHECK(buffer.str().size() == table.size() * 16);
  const DpTable back = DpTable::read_spill(buffer, g.edge_count());
  CHECK(back.size() == table.size());
  table.for_each([&](EdgeSet s, Arc a, Arc b, const DpEntry& e) {
    const auto other = back.find(s, a, b);
    REQUIRE(other);
    CHECK(other->length == e.length);
    CHECK(other->predecessor == e.predecessor);
  });
}

TEST_CASE("the split identity needs a shared pivot orientation") {
  // Joining halves whose best orientations differ over-counts: the star
  // would get 3 edges.
  const Graph g = star3();
  DpTable table(3);
  const TrailLength loose =
      combine(get_len(g, EdgeSet(0b011), 0, 1, table), get_len(g, EdgeSet(0b110), 1, 2, table));
  CHECK(loose == 3);
  CHECK(get_len(g, EdgeSet(0b111), 0, 2, table) == 2);
}
