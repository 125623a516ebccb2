#include "ltp/report.hpp"

namespace ltp {

using nlohmann::json;

namespace {

template <class T>
json or_null(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

}  // namespace

json to_json(const RunReport& report) {
  json doc;
  doc["engine"] = report.engine;
  doc["n"] = report.n;
  doc["m"] = report.m;
  doc["length"] = report.length;
  doc["trail"] = report.trail.edge_ids;
  if (report.queries) {
    json per_level = json::object();
    const auto& levels = report.queries->per_level();
    for (std::size_t i = 0; i < levels.size(); ++i) {
      per_level[QueryLedger::level_key(static_cast<int>(i))] = levels[i];
    }
    doc["queries"] = {{"total", report.queries->total()}, {"per_level", per_level}};
  } else {
    doc["queries"] = nullptr;
  }
  doc["seed"] = report.seed;
  doc["alpha"] = or_null(report.alpha);
  doc["mode"] = or_null(report.mode);
  doc["wall_ms"] = report.wall_ms;
  if (report.config) {
    doc["config"] = {{"repeats", report.config->repeats},
                     {"budget_constant", report.config->budget_constant},
                     {"layer", report.config->layer},
                     {"classical_entries", report.config->classical_entries},
                     {"success_nominal", report.config->success_nominal}};
  } else {
    doc["config"] = nullptr;
  }
  return doc;
}

RunReport report_from_json(const json& doc) {
  RunReport report;
  report.engine = doc.at("engine").get<std::string>();
  report.n = doc.at("n").get<int>();
  report.m = doc.at("m").get<int>();
  report.length = doc.at("length").get<int>();
  report.trail.edge_ids = doc.at("trail").get<std::vector<int>>();
  if (const json& q = doc.at("queries"); !q.is_null()) {
    QueryLedger ledger;
    const json& per_level = q.at("per_level");
    for (std::size_t i = 0; i < per_level.size(); ++i) {
      // Zero-count levels still occupy a slot.
      const std::string key = QueryLedger::level_key(static_cast<int>(i));
      const auto count = per_level.at(key).get<std::uint64_t>();
      ledger.charge(static_cast<int>(i), count);
    }
    if (ledger.total() != q.at("total").get<std::uint64_t>()) {
      throw std::runtime_error("report queries.total disagrees with per_level");
    }
    report.queries = ledger;
  }
  report.seed = doc.at("seed").get<std::uint64_t>();
  if (!doc.at("alpha").is_null()) report.alpha = doc.at("alpha").get<double>();
  if (!doc.at("mode").is_null()) report.mode = doc.at("mode").get<std::string>();
  report.wall_ms = doc.at("wall_ms").get<double>();
  if (const json& c = doc.at("config"); !c.is_null()) {
    report.config = HybridEcho{c.at("repeats").get<int>(), c.at("budget_constant").get<double>(),
                               c.at("layer").get<int>(),
                               c.at("classical_entries").get<std::uint64_t>(),
                               c.at("success_nominal").get<bool>()};
  }
  return report;
}

json to_json(const CostReport& report) {
  return {{"m", report.m},
          {"alpha", report.alpha},
          {"classical_set_size", report.classical_set_size},
          {"layer_set_size", report.layer_set_size},
          {"alpha_set_size", report.alpha_set_size},
          {"classical_count", or_null(report.classical_count)},
          {"quantum_count", or_null(report.quantum_count)},
          {"classical_log2", report.classical_log2},
          {"quantum_log2", report.quantum_log2},
          {"classical_exponent", report.classical_exponent},
          {"quantum_exponent", report.quantum_exponent},
          {"balance_gap", report.balance_gap}};
}

}  // namespace ltp
