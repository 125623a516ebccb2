#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltp/classical_dp.hpp"
#include "ltp/graph.hpp"
#include "ltp/hybrid.hpp"
#include "ltp/oracle.hpp"
#include "ltp/report.hpp"

using namespace ltp;
using nlohmann::json;

namespace {

struct Options {
  int n = 6;
  int m = 0;
  std::uint64_t seed = 0;
  std::string engine = "hybrid";
  std::string mode = "det";
  double alpha = kDefaultAlpha;
  int repeats = 0;
  double budget_constant = kDefaultBudgetConstant;
  std::vector<int> sizes;
  int runs = 10;
  std::string out;
  std::string format = "json";
  std::string input;
  std::string dump_table;
  std::vector<std::uint64_t> random_args;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + opt.out);
  file << text;
}

HybridConfig hybrid_config(const Options& opt) {
  HybridConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.mode = opt.mode == "stoch" ? SearchMode::stochastic : SearchMode::deterministic;
  cfg.repeats_per_level = opt.repeats;
  cfg.seed = opt.seed;
  cfg.budget_constant = opt.budget_constant;
  return cfg;
}

RunReport run_engine(const Graph& g, const Options& opt) {
  RunReport report;
  report.n = g.vertex_count();
  report.m = g.edge_count();
  report.seed = opt.seed;
  const auto start = std::chrono::steady_clock::now();
  if (opt.engine == "oracle" || opt.engine == "dp") {
    const OracleResult r = opt.engine == "oracle" ? longest_trail_bruteforce(g) : full_dp_longest_trail(g);
    report.engine = opt.engine;
    report.length = r.length;
    report.trail = r.trail;
  } else {
    const HybridConfig cfg = hybrid_config(opt);
    const SolveResult r = solve_hybrid(g, cfg);
    report.engine = cfg.mode == SearchMode::stochastic ? "hybrid-stoch" : "hybrid-det";
    report.length = r.length;
    report.trail = r.trail;
    report.queries = r.ledger;
    report.alpha = cfg.alpha;
    report.mode = opt.mode;
    report.config = HybridEcho{cfg.repeats_for(g.edge_count()), cfg.budget_constant, r.layer,
                               static_cast<std::uint64_t>(r.classical_entries), r.success_nominal};
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

int cmd_gen(const Options& opt) {
  emit(opt, serialize_graph(random_graph(opt.n, opt.m, opt.seed)));
  return 0;
}

int cmd_solve(const Options& opt) {
  const Graph g = read_graph_file(opt.input);
  const RunReport report = run_engine(g, opt);
  if (const TrailVerdict v = validate_trail(g, report.trail); !v) {
    throw std::logic_error("engine returned an invalid trail: " + v.violation);
  }
  if (!opt.dump_table.empty()) {
    if (opt.engine != "hybrid") throw std::invalid_argument("--dump-table needs --engine hybrid");
    const int m = g.edge_count();
    const int layer = m == 0 ? 0 : LayerSpec::for_edges(m, opt.alpha).effective_layer(m);
    std::ofstream file(opt.dump_table, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + opt.dump_table);
    if (layer > 0) precompute_layer(g, LayerSpec{opt.alpha, layer}).write_spill(file);
  }
  emit(opt, to_json(report).dump() + "\n");
  return 0;
}

// Returns true when all three engines agree and every trail is valid.
bool verify_one(const Graph& g, std::ostream& log) {
  const OracleResult brute = longest_trail_bruteforce(g);
  const OracleResult dp = full_dp_longest_trail(g);
  const SolveResult hybrid = solve_hybrid(g, {});
  log << "oracle=" << brute.length << " dp=" << dp.length << " hybrid-det=" << hybrid.length;
  bool ok = brute.length == dp.length && dp.length == hybrid.length;
  for (const Trail* t : {&brute.trail, &dp.trail, &hybrid.trail}) {
    if (const TrailVerdict v = validate_trail(g, *t); !v) {
      log << " invalid trail (" << v.violation << ")";
      ok = false;
    }
  }
  log << (ok ? "" : " MISMATCH") << "\n";
  return ok;
}

int cmd_verify(const Options& opt) {
  int agree = 0;
  int total = 0;
  std::ostringstream log;
  if (!opt.random_args.empty()) {
    const auto [count, n, m, seed] =
        std::tuple{opt.random_args[0], opt.random_args[1], opt.random_args[2], opt.random_args[3]};
    for (std::uint64_t i = 0; i < count; ++i) {
      const Graph g = random_graph(static_cast<int>(n), static_cast<int>(m), seed + i);
      log << "seed " << seed + i << ": ";
      agree += verify_one(g, log) ? 1 : 0;
      ++total;
    }
  } else {
    if (opt.input.empty()) throw std::invalid_argument("verify needs an input file or --random");
    agree = verify_one(read_graph_file(opt.input), log) ? 1 : 0;
    total = 1;
  }
  std::cerr << log.str();
  emit(opt, std::to_string(agree) + "/" + std::to_string(total) + " agree\n");
  return agree == total ? 0 : 1;
}

int cmd_costs(const Options& opt) {
  emit(opt, to_json(theoretical_costs(opt.m, opt.alpha)).dump(2) + "\n");
  return 0;
}

struct BenchRow {
  int m = 0;
  std::uint64_t seed = 0;
  int length = 0;
  int truth = 0;
  bool success = false;
  std::uint64_t queries = 0;
  std::vector<std::uint64_t> per_level;
  double wall_ms = 0;
};

template <class T>
json summary(const std::vector<T>& v) {
  if (v.empty()) return nullptr;
  double sum = 0;
  for (T x : v) sum += static_cast<double>(x);
  return {{"mean", sum / static_cast<double>(v.size())},
          {"min", *std::min_element(v.begin(), v.end())},
          {"max", *std::max_element(v.begin(), v.end())}};
}

int cmd_bench(const Options& opt) {
  if (opt.sizes.empty()) throw std::invalid_argument("bench needs --sizes");
  if (opt.runs < 1) throw std::invalid_argument("--runs must be positive");
  std::vector<BenchRow> rows;
  for (int m : opt.sizes) {
    for (int r = 0; r < opt.runs; ++r) {
      Options run = opt;
      run.engine = "hybrid";
      run.seed = opt.seed + static_cast<std::uint64_t>(r);
      const Graph g = random_graph(opt.n, m, run.seed);
      const RunReport report = run_engine(g, run);
      BenchRow row;
      row.m = m;
      row.seed = run.seed;
      row.length = report.length;
      row.truth = full_dp_longest_trail(g).length;
      row.success = row.length == row.truth;
      row.queries = report.queries->total();
      row.per_level = report.queries->per_level();
      row.wall_ms = report.wall_ms;
      rows.push_back(row);
      std::cerr << "m=" << m << " seed=" << run.seed << " length=" << row.length << "/" << row.truth << "\n";
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const BenchRow& a, const BenchRow& b) { return std::tie(a.m, a.seed) < std::tie(b.m, b.seed); });

  std::map<int, std::vector<const BenchRow*>> by_size;
  std::size_t levels = 0;
  for (const BenchRow& row : rows) {
    by_size[row.m].push_back(&row);
    levels = std::max(levels, row.per_level.size());
  }

  json aggregates = json::array();
  for (const auto& [m, group] : by_size) {
    std::vector<std::uint64_t> queries;
    std::vector<double> wall;
    int hits = 0;
    for (const BenchRow* row : group) {
      queries.push_back(row->queries);
      wall.push_back(row->wall_ms);
      hits += row->success ? 1 : 0;
    }
    json entry = {{"m", m},
                  {"runs", group.size()},
                  {"success_rate", static_cast<double>(hits) / static_cast<double>(group.size())},
                  {"queries", summary(queries)},
                  {"wall_ms", summary(wall)},
                  {"quantum_log2_nominal", nullptr}};
    if (m >= 4) entry["quantum_log2_nominal"] = theoretical_costs(m, opt.alpha).quantum_log2;
    aggregates.push_back(entry);
  }

  std::ostringstream text;
  if (opt.format == "csv") {
    text << "m,seed,length,truth,success,queries_total";
    for (std::size_t l = 0; l < levels; ++l) text << "," << QueryLedger::level_key(static_cast<int>(l));
    text << ",wall_ms\n";
    for (const BenchRow& row : rows) {
      text << row.m << "," << row.seed << "," << row.length << "," << row.truth << "," << (row.success ? 1 : 0)
           << "," << row.queries;
      for (std::size_t l = 0; l < levels; ++l) text << "," << (l < row.per_level.size() ? row.per_level[l] : 0);
      text << "," << row.wall_ms << "\n";
    }
    text << "\nm,runs,success_rate,queries_mean,queries_min,queries_max,wall_ms_mean,wall_ms_min,wall_ms_max\n";
    for (const json& a : aggregates) {
      text << a["m"] << "," << a["runs"] << "," << a["success_rate"] << "," << a["queries"]["mean"] << ","
           << a["queries"]["min"] << "," << a["queries"]["max"] << "," << a["wall_ms"]["mean"] << ","
           << a["wall_ms"]["min"] << "," << a["wall_ms"]["max"] << "\n";
    }
  } else {
    json doc = {{"mode", opt.mode}, {"n", opt.n}, {"alpha", opt.alpha}, {"rows", json::array()},
                {"aggregates", aggregates}};
    for (const BenchRow& row : rows) {
      json per_level = json::object();
      for (std::size_t l = 0; l < row.per_level.size(); ++l) {
        per_level[QueryLedger::level_key(static_cast<int>(l))] = row.per_level[l];
      }
      doc["rows"].push_back({{"m", row.m},
                             {"seed", row.seed},
                             {"length", row.length},
                             {"truth", row.truth},
                             {"success", row.success},
                             {"queries", {{"total", row.queries}, {"per_level", per_level}}},
                             {"wall_ms", row.wall_ms}});
    }
    text << doc.dump(2) << "\n";
  }
  emit(opt, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longest trail solvers: brute force, classical DP and a simulated hybrid search"};
  app.require_subcommand(1);
  Options opt;

  auto add_hybrid_flags = [&](CLI::App* sub) {
    sub->add_option("--mode", opt.mode, "hybrid search mode")->check(CLI::IsMember({"det", "stoch"}));
    sub->add_option("--alpha", opt.alpha, "layer parameter")->check(CLI::Range(0.0, 0.999));
    sub->add_option("--repeats", opt.repeats, "boosting repeats per level (default 2m)")->check(CLI::NonNegativeNumber);
    sub->add_option("--budget-constant", opt.budget_constant, "Durr-Hoyer budget constant")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--out", opt.out, "write output to a file instead of stdout");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a random multigraph edge list");
  gen->add_option("--n", opt.n, "vertex count")->required();
  gen->add_option("--m", opt.m, "edge count")->required();
  gen->add_option("--seed", opt.seed, "random seed");
  gen->add_option("--out", opt.out, "output path");

  CLI::App* solve = app.add_subcommand("solve", "solve one edge-list file and print a JSON report");
  solve->add_option("input", opt.input, "edge-list file")->required();
  solve->add_option("--engine", opt.engine, "solver")->check(CLI::IsMember({"oracle", "dp", "hybrid"}));
  solve->add_option("--dump-table", opt.dump_table, "write the precomputed layer as binary records");
  add_hybrid_flags(solve);

  CLI::App* verify = app.add_subcommand("verify", "cross-check oracle, DP and deterministic hybrid");
  verify->add_option("input", opt.input, "edge-list file");
  verify->add_option("--random", opt.random_args, "count n m seed")->expected(4);
  verify->add_option("--out", opt.out, "output path");

  CLI::App* costs = app.add_subcommand("costs", "nominal classical and quantum costs");
  costs->add_option("--m", opt.m, "edge count")->required();
  costs->add_option("--alpha", opt.alpha, "layer parameter")->check(CLI::Range(0.0, 0.999));
  costs->add_option("--out", opt.out, "output path");

  CLI::App* bench = app.add_subcommand("bench", "run the hybrid on random graphs and compare with DP");
  bench->add_option("--sizes", opt.sizes, "edge counts, comma separated")->delimiter(',')->required();
  bench->add_option("--runs", opt.runs, "seeds per size");
  bench->add_option("--n", opt.n, "vertex count of the random graphs");
  bench->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  add_hybrid_flags(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(opt);
    if (*solve) return cmd_solve(opt);
    if (*verify) return cmd_verify(opt);
    if (*costs) return cmd_costs(opt);
    if (*bench) return cmd_bench(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
