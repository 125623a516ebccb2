#include "ltp/qmax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ltp/graph.hpp"

namespace ltp {

void QueryLedger::charge(int level, std::uint64_t queries) {
  if (level < 0) throw std::invalid_argument("negative ledger level");
  if (per_level_.size() <= static_cast<std::size_t>(level)) {
    per_level_.resize(static_cast<std::size_t>(level) + 1, 0);
  }
  per_level_[static_cast<std::size_t>(level)] += queries;
  total_ += queries;
}

void QueryLedger::charge_relative(std::span<const std::uint64_t> relative, int base_level) {
  for (std::size_t i = 0; i < relative.size(); ++i) {
    if (relative[i] != 0) charge(base_level + static_cast<int>(i), relative[i]);
  }
}

void QueryLedger::merge(const QueryLedger& other) { charge_relative(other.per_level_, 0); }

std::uint64_t QueryLedger::at(int level) const {
  if (level < 0 || static_cast<std::size_t>(level) >= per_level_.size()) return 0;
  return per_level_[static_cast<std::size_t>(level)];
}

std::uint64_t grover_stage_cost(std::uint64_t n, std::uint64_t t) {
  if (t < 1 || t > n) throw std::invalid_argument("grover_stage_cost requires 1 <= t <= n");
  const double iterations =
      std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n) / static_cast<double>(t));
  return static_cast<std::uint64_t>(std::ceil(iterations));
}

double durr_hoyer_budget(std::uint64_t n, double budget_constant) {
  return budget_constant * std::ceil(std::sqrt(static_cast<double>(n)));
}

QmaxOutcome qmax_exhaustive(const ValueOracle& oracle, QueryLedger& ledger, int level) {
  if (oracle.size == 0) throw std::invalid_argument("qmax over an empty sequence");
  QmaxOutcome out;
  for (std::size_t i = 0; i < oracle.size; ++i) {
    const TrailLength v = oracle.evaluate(i);
    if (v && (!out.value || *v > *out.value)) {
      out.value = v;
      out.witness = i;
    }
  }
  out.queries = oracle.size;
  ledger.charge(level, out.queries);
  return out;
}

RealizedValues::RealizedValues(std::vector<TrailLength> values) : values_(std::move(values)) {
  order_.resize(values_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t x, std::size_t y) { return values_[x] < values_[y]; });
  above_.resize(values_.size());
  std::size_t group_end = order_.size();
  for (std::size_t pos = order_.size(); pos-- > 0;) {
    if (pos + 1 < order_.size() && values_[order_[pos]] != values_[order_[pos + 1]]) group_end = pos + 1;
    above_[order_[pos]] = order_.size() - group_end;
  }
}

RealizedValues RealizedValues::from_oracle(const ValueOracle& oracle) {
  std::vector<TrailLength> values(oracle.size);
  for (std::size_t i = 0; i < oracle.size; ++i) values[i] = oracle.evaluate(i);
  return RealizedValues(std::move(values));
}

std::size_t RealizedValues::count_above(const TrailLength& threshold) const {
  const auto first_above = std::upper_bound(
      order_.begin(), order_.end(), threshold,
      [&](const TrailLength& t, std::size_t i) { return t < values_[i]; });
  return static_cast<std::size_t>(order_.end() - first_above);
}

namespace {

QmaxOutcome run_durr_hoyer(const RealizedValues& values, std::mt19937_64& rng, double budget_constant,
                           std::vector<std::size_t>* trace) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("qmax over an empty sequence");
  const double budget = durr_hoyer_budget(n, budget_constant);

  QmaxOutcome out;
  std::size_t current = uniform_below(rng, n);
  out.queries = 1;
  if (trace) trace->push_back(current);
  while (true) {
    const std::size_t above = values.count_above_entry(current);
    if (above == 0) break;
    const std::uint64_t cost = grover_stage_cost(n, above);
    if (static_cast<double>(out.queries + cost) > budget) {
      out.budget_exhausted = true;
      break;
    }
    out.queries += cost;
    current = values.nth_above(above, uniform_below(rng, above));
    if (trace) trace->push_back(current);
  }
  out.value = values[current];
  if (out.value) out.witness = current;
  return out;
}

}  // namespace

QmaxOutcome qmax_durr_hoyer(const RealizedValues& values, std::mt19937_64& rng,
                            double budget_constant) {
  std::vector<std::size_t> trace;
  QmaxOutcome out = run_durr_hoyer(values, rng, budget_constant, &trace);
  out.thresholds = std::move(trace);
  return out;
}

QmaxOutcome qmax_durr_hoyer(const ValueOracle& oracle, std::mt19937_64& rng, QueryLedger& ledger,
                            int level, double budget_constant) {
  QmaxOutcome out = qmax_durr_hoyer(RealizedValues::from_oracle(oracle), rng, budget_constant);
  ledger.charge(level, out.queries);
  return out;
}

namespace {

void keep_better(QmaxOutcome& best, QmaxOutcome run, bool first) {
  const std::uint64_t spent = best.queries + run.queries;
  if (first || run.value > best.value) best = std::move(run);
  best.queries = spent;
}

}  // namespace

QmaxOutcome boosted_qmax(const RealizedValues& values, int repeats, std::mt19937_64& rng,
                         double budget_constant) {
  if (repeats < 1) throw std::invalid_argument("boosting needs at least one repeat");
  QmaxOutcome best;
  for (int r = 0; r < repeats; ++r) keep_better(best, run_durr_hoyer(values, rng, budget_constant, nullptr), r == 0);
  return best;
}

QmaxOutcome boosted_qmax(const ValueOracle& oracle, int repeats, std::mt19937_64& rng,
                         QueryLedger& ledger, int level, double budget_constant) {
  if (repeats < 1) throw std::invalid_argument("boosting needs at least one repeat");
  QmaxOutcome best;
  const RealizedValues values = RealizedValues::from_oracle(oracle);
  for (int r = 0; r < repeats; ++r) keep_better(best, run_durr_hoyer(values, rng, budget_constant, nullptr), r == 0);
  ledger.charge(level, best.queries);
  return best;
}

}  // namespace ltp
