#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ltp/classical_dp.hpp"
#include "ltp/hybrid.hpp"
#include "ltp/oracle.hpp"
#include "ltp/qmax.hpp"
#include "test_support.hpp"

using namespace ltp;
using namespace ltp::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Graphs shared by the equivalence checks and the base case.
std::vector<Graph> oracle_graphs() {
  std::vector<Graph> out;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(i % 6);
    const int m = 1 + static_cast<int>((i / 6) % 12);
    out.push_back(random_graph(n, m, 10000 + i));
  }
  return out;
}

std::vector<Graph> hybrid_graphs() {
  std::vector<Graph> out;
  for (std::uint64_t i = 0; i < 110; ++i) {
    const int n = 2 + static_cast<int>((i / 11) % 6);
    const int m = 4 + static_cast<int>(i % 11);
    out.push_back(random_graph(n, m, 20000 + i));
  }
  return out;
}

void oracle_dp_equivalence(const std::vector<Graph>& graphs) {
  const auto start = Clock::now();
  int agree = 0;
  for (const Graph& g : graphs) {
    const OracleResult brute = longest_trail_bruteforce(g);
    const OracleResult dp = full_dp_longest_trail(g);
    if (brute.length == dp.length && validate_trail(g, dp.trail) &&
        dp.trail.length() == static_cast<std::size_t>(dp.length)) {
      ++agree;
    }
  }
  const double t = seconds_since(start);
  const int total = static_cast<int>(graphs.size());
  report(agree == total && total >= 300 && t < 120.0, "oracle == full DP",
         format("%d/%d graphs agree, %.1f s (limit 120 s)", agree, total, t));
}

void hybrid_equivalence(const std::vector<Graph>& graphs) {
  const auto start = Clock::now();
  int agree = 0;
  for (const Graph& g : graphs) {
    const SolveResult r = solve_hybrid(g, {});
    if (r.length == full_dp_longest_trail(g).length && validate_trail(g, r.trail) &&
        r.trail.length() == static_cast<std::size_t>(r.length)) {
      ++agree;
    }
  }
  const double t = seconds_since(start);
  const int total = static_cast<int>(graphs.size());
  report(agree == total && total >= 100 && t < 300.0, "deterministic hybrid == DP",
         format("%d/%d graphs agree with valid trails, m in [4,14], %.1f s (limit 300 s)", agree, total, t));
}

void base_case(const std::vector<Graph>& a, const std::vector<Graph>& b) {
  int checked = 0;
  int bad = 0;
  for (const auto* set : {&a, &b}) {
    for (const Graph& g : *set) {
      DpTable table(g.edge_count());
      for (int e = 0; e < g.edge_count(); ++e) {
        ++checked;
        const EdgeSet single = EdgeSet::single(e);
        bool ok = get_len(g, single, e, e, table) == 1;
        for (Arc arc : {Arc::forward(e), Arc::backward(e)}) {
          ok = ok && get_len(g, single, arc, arc, table) == 1 &&
               reconstruct_path(table, single, arc, arc).edge_ids == std::vector<int>{e};
        }
        if (!ok) ++bad;
      }
    }
  }
  report(bad == 0, "singleton base case", format("%d edges, %d mismatches", checked, bad));
}

// Every (S, first, last, k): the value equals the best join of a first half
// of size k holding the first edge with the rest plus the shared pivot.
void split_property() {
  int graphs = 0;
  std::uint64_t keys = 0;
  std::uint64_t bad = 0;
  std::uint64_t oracle_bad = 0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const int m = 5 + static_cast<int>(seed % 4);
    const Graph g = random_graph(2 + static_cast<int>(seed % 5), m, 30000 + seed);
    ++graphs;
    DpTable table(m);
    for (std::uint32_t bits = 1; bits < (1u << m); ++bits) {
      const EdgeSet s(bits);
      for (int fe : s) {
        for (int le : s) {
          for (int fd = 0; fd < 2; ++fd) {
            for (int ld = 0; ld < 2; ++ld) {
              const Arc first(2 * fe + fd);
              const Arc last(2 * le + ld);
              const TrailLength whole = get_len(g, s, first, last, table);
              if (whole != constrained_longest_bruteforce(g, s, first, last)) ++oracle_bad;
              for (int k = 1; k <= s.size(); ++k) {
                ++keys;
                TrailLength best;
                for_each_subset_of_size(s.without(fe), k - 1, [&](EdgeSet rest) {
                  const EdgeSet left = rest.with(fe);
                  for (int y : left) {
                    if (left.contains(le) && y != le) continue;
                    const EdgeSet right = (s - left).with(y);
                    for (Arc pivot : {Arc::forward(y), Arc::backward(y)}) {
                      best = std::max(best, combine(get_len(g, left, first, pivot, table),
                                                    get_len(g, right, pivot, last, table)));
                    }
                  }
                });
                if (best != whole) ++bad;
              }
            }
          }
        }
      }
    }
  }
  report(bad == 0 && oracle_bad == 0 && graphs >= 20, "split property (-1 join)",
         format("%d graphs, m <= 8, %llu (S,first,last,k) keys, %llu split mismatches, %llu oracle mismatches",
                graphs, static_cast<unsigned long long>(keys), static_cast<unsigned long long>(bad),
                static_cast<unsigned long long>(oracle_bad)));
}

void stochastic_success() {
  const auto start = Clock::now();
  int hits = 0;
  int invalid = 0;
  const int runs = 200;
  for (int i = 0; i < runs; ++i) {
    const std::uint64_t seed = 40000 + static_cast<std::uint64_t>(i);
    const Graph g = random_graph(3 + i % 5, 12, seed);
    HybridConfig cfg;
    cfg.mode = SearchMode::stochastic;
    cfg.seed = seed;
    const SolveResult r = solve_hybrid(g, cfg);
    if (!validate_trail(g, r.trail) || r.trail.length() != static_cast<std::size_t>(r.length)) ++invalid;
    if (r.length == full_dp_longest_trail(g).length) ++hits;
  }
  const double t = seconds_since(start);
  const double rate = static_cast<double>(hits) / runs;
  report(rate >= 0.80 && invalid == 0 && t < 600.0, "stochastic success rate",
         format("%d/%d = %.3f (need >= 0.80) at m = 12, %d invalid trails, %.1f s (limit 600 s)", hits, runs,
                rate, invalid, t));
}

RealizedValues shuffled_values(std::size_t n, std::mt19937_64& rng) {
  std::vector<TrailLength> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<int>(i);
  std::shuffle(values.begin(), values.end(), rng);
  return RealizedValues(std::move(values));
}

void durr_hoyer_calibration() {
  const int trials = 1000;
  int found = 0;
  for (int seed = 0; seed < trials; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    const RealizedValues values = shuffled_values(256, rng);
    if (qmax_durr_hoyer(values, rng, kDefaultBudgetConstant).value == 255) ++found;
  }
  const double rate = static_cast<double>(found) / trials;
  report(rate >= 0.90, "Durr-Hoyer calibration",
         format("max found in %d/%d trials = %.3f (need >= 0.90), N = 256, budget constant 23", found, trials,
                rate));
}

void query_scaling() {
  std::vector<double> means;
  for (std::size_t n : {std::size_t{1} << 8, std::size_t{1} << 10, std::size_t{1} << 12, std::size_t{1} << 14}) {
    double total = 0;
    for (int seed = 0; seed < 1000; ++seed) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 50000);
      const RealizedValues values = shuffled_values(n, rng);
      total += static_cast<double>(qmax_durr_hoyer(values, rng, kDefaultBudgetConstant).queries);
    }
    means.push_back(total / 1000.0);
  }
  bool ok = true;
  std::string detail = "means";
  for (double mean : means) detail += format(" %.1f", mean);
  detail += "; ratios";
  for (std::size_t i = 1; i < means.size(); ++i) {
    const double ratio = means[i] / means[i - 1];
    ok = ok && ratio <= 2.3;
    detail += format(" %.3f", ratio);
  }
  report(ok, "query scaling per 4x N", detail + " (need <= 2.3)");
}

void exponent_balance() {
  const CostReport c = theoretical_costs(2000, 0.055);
  const double target = std::log2(1.728);
  const bool ok = std::abs(c.classical_exponent - target) <= 0.02 &&
                  std::abs(c.quantum_exponent - target) <= 0.02 && c.balance_gap < 0.01;
  report(ok, "exponent balance at m=2000",
         format("classical %.5f, quantum %.5f (target %.5f +- 0.02), gap %.5f (need < 0.01)",
                c.classical_exponent, c.quantum_exponent, target, c.balance_gap));
}

void ledger_exactness() {
  bool ok = true;
  std::string detail;
  for (int m : {8, 12}) {
    const int layer = LayerSpec::for_edges(m).effective_layer(m);
    const std::vector<std::uint64_t> predicted = predicted_solve_queries(m, layer);
    const std::uint64_t predicted_total = std::accumulate(predicted.begin(), predicted.end(), std::uint64_t{0});
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SolveResult r = solve_hybrid(random_graph(3 + static_cast<int>(seed), m, 60000 + seed), {});
      ok = ok && r.ledger.total() == predicted_total && r.ledger.per_level() == predicted;
    }
    detail += format("m=%d predicted %llu ", m, static_cast<unsigned long long>(predicted_total));
  }
  report(ok, "deterministic ledger totals", detail + "(3 graphs each, per level and total)");
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::vector<Graph> small = oracle_graphs();
  const std::vector<Graph> medium = hybrid_graphs();
  oracle_dp_equivalence(small);
  hybrid_equivalence(medium);
  base_case(small, medium);
  split_property();
  stochastic_success();
  durr_hoyer_calibration();
  query_scaling();
  exponent_balance();
  ledger_exactness();
  std::printf("%d failed, %.1f s total\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
