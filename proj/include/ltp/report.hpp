#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ltp/graph.hpp"
#include "ltp/hybrid.hpp"
#include "ltp/qmax.hpp"

namespace ltp {

// Hybrid-only settings and diagnostics carried in a run report.
struct HybridEcho {
  int repeats = 0;
  double budget_constant = kDefaultBudgetConstant;
  int layer = 0;
  std::uint64_t classical_entries = 0;
  bool success_nominal = true;

  friend bool operator==(const HybridEcho&, const HybridEcho&) = default;
};

struct RunReport {
  std::string engine;  // oracle | dp | hybrid-det | hybrid-stoch
  int n = 0;
  int m = 0;
  int length = 0;
  Trail trail;
  std::optional<QueryLedger> queries;
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  std::optional<std::string> mode;
  double wall_ms = 0;
  std::optional<HybridEcho> config;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const CostReport& report);

}  // namespace ltp
