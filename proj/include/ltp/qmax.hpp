#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ltp/oracle.hpp"

namespace ltp {

inline constexpr double kDefaultBudgetConstant = 23.0;

// Oracle evaluations charged per recursion level ("level0", "level1", ...).
class QueryLedger {
 public:
  void charge(int level, std::uint64_t queries);
  // Adds counts expressed relative to `base_level`.
  void charge_relative(std::span<const std::uint64_t> relative, int base_level);
  void merge(const QueryLedger& other);

  std::uint64_t at(int level) const;
  std::uint64_t total() const { return total_; }
  const std::vector<std::uint64_t>& per_level() const { return per_level_; }
  static std::string level_key(int level) { return "level" + std::to_string(level); }

  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;

 private:
  std::vector<std::uint64_t> per_level_;
  std::uint64_t total_ = 0;
};

// Implicit value sequence; one evaluate call is one query.
struct ValueOracle {
  std::size_t size = 0;
  std::function<TrailLength(std::size_t)> evaluate;
};

struct QmaxOutcome {
  TrailLength value;
  std::optional<std::size_t> witness;
  std::uint64_t queries = 0;
  // Successive threshold indices of a Durr-Hoyer run.
  std::vector<std::size_t> thresholds;
  bool budget_exhausted = false;
};

// ceil((pi / 4) * sqrt(n / t)): one idealized Grover search with t of n marked.
std::uint64_t grover_stage_cost(std::uint64_t n, std::uint64_t t);

// Charge cap of one Durr-Hoyer run: budget_constant * ceil(sqrt(n)).
double durr_hoyer_budget(std::uint64_t n, double budget_constant);

QmaxOutcome qmax_exhaustive(const ValueOracle& oracle, QueryLedger& ledger, int level = 0);

// A value sequence whose entries are fixed for the duration of a search,
// with an index order sorted by value for threshold counting.
class RealizedValues {
 public:
  explicit RealizedValues(std::vector<TrailLength> values);
  static RealizedValues from_oracle(const ValueOracle& oracle);

  std::size_t size() const { return values_.size(); }
  const TrailLength& operator[](std::size_t i) const { return values_[i]; }
  TrailLength max() const { return values_.empty() ? TrailLength{} : values_[order_.back()]; }

  // Number of entries strictly above `threshold`.
  std::size_t count_above(const TrailLength& threshold) const;
  std::size_t count_above_entry(std::size_t i) const { return above_[i]; }
  // The r-th entry (0-based) among those strictly above the threshold that
  // count_above reported; ascending by value, then by index.
  std::size_t nth_above(std::size_t above, std::size_t r) const {
    return order_[order_.size() - above + r];
  }

 private:
  std::vector<TrailLength> values_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> above_;
};

// Idealized threshold search. Charges nothing; the outcome reports its cost.
QmaxOutcome qmax_durr_hoyer(const RealizedValues& values, std::mt19937_64& rng,
                            double budget_constant = kDefaultBudgetConstant);

// Realizes the oracle, runs one search and charges `level`.
QmaxOutcome qmax_durr_hoyer(const ValueOracle& oracle, std::mt19937_64& rng, QueryLedger& ledger,
                            int level = 0, double budget_constant = kDefaultBudgetConstant);

// Best of `repeats` independent runs (first on ties); queries add up. The
// result carries no threshold trace.
QmaxOutcome boosted_qmax(const RealizedValues& values, int repeats, std::mt19937_64& rng,
                         double budget_constant = kDefaultBudgetConstant);

QmaxOutcome boosted_qmax(const ValueOracle& oracle, int repeats, std::mt19937_64& rng,
                         QueryLedger& ledger, int level = 0,
                         double budget_constant = kDefaultBudgetConstant);

}  // namespace ltp
