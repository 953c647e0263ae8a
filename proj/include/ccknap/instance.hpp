#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccknap {

/**
 * Deterministic 0-1 knapsack instance: n items with positive integer profits
 * and weights, and a positive integer capacity.
 */
struct DetInstance {
  int n = 0;
  std::vector<long long> profits;
  std::vector<long long> weights;
  long long capacity = 0;
};

/// Throws std::invalid_argument if any field invariant is violated.
void validate(const DetInstance& det);

enum class ModelKind {
  deterministic,     // zero-variance sentinel
  uniform_additive,  // weight_i uniform on [a_i - delta, a_i + delta]
  uniform_relative,  // weight_i uniform on [(1-beta) a_i, (1+beta) a_i]
  normal,            // weight_i normal with mean a_i, variance variances[i]
};

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/**
 * Stochastic weight model, shared by all items of an instance. The additive
 * model uses one interval half-width delta for every item (item-dependent
 * widths are not supported).
 */
struct WeightModel {
  ModelKind kind = ModelKind::deterministic;
  double delta = 0.0;              // uniform_additive
  double beta = 0.0;               // uniform_relative
  std::vector<double> variances;   // normal, one entry per item

  static WeightModel deterministic();
  static WeightModel uniform_additive(double delta);
  static WeightModel uniform_relative(double beta);
  static WeightModel normal(std::vector<double> variances);
};

/**
 * Chance-constrained knapsack instance. Weights are independent random
 * variables with expected values expected_weights[i]; the capacity bound B
 * may be violated with probability at most alpha.
 */
struct CCInstance {
  int n = 0;
  std::vector<long long> profits;
  std::vector<double> expected_weights;
  WeightModel model;
  double capacity = 0.0;
  double alpha = 0.01;
};

/// Throws std::invalid_argument on broken invariants (e.g. additive delta
/// not smaller than the smallest expected weight, alpha outside (0, 1]).
void validate(const CCInstance& inst);

/// Variance of item i's weight under the instance's model.
double item_variance(const CCInstance& inst, int i);

/// Search point: one bit per item.
struct Solution {
  std::vector<std::uint8_t> bits;

  Solution() = default;
  explicit Solution(int n) : bits(static_cast<std::size_t>(n), 0) {}

  int size() const { return static_cast<int>(bits.size()); }
  int count() const;

  std::string to_string() const;  // e.g. "01011"
  static Solution from_string(const std::string& text);

  bool operator==(const Solution&) const = default;
};

/**
 * Expected weight, weight variance and selected-item count of a solution.
 * All three components are additive over disjoint item sets.
 */
struct WeightStats {
  double expected = 0.0;
  double variance = 0.0;
  int count = 0;
};

/// Result of the gamma-shift benchmark adaptation (see adapt_instance).
struct AdaptationReport {
  long long gamma = 0;
  int k = 0;  // greedy count of smallest items fitting the original capacity
  long long original_capacity = 0;
  double adapted_capacity = 0.0;
};

/**
 * Parses the canonical text format:
 *   line 1      item count n
 *   lines 2..n+1  "p_i w_i"
 *   line n+2    capacity B
 * Errors are reported with the offending line number.
 */
DetInstance parse_instance(const std::string& text);
DetInstance parse_instance(std::istream& in);

/// Canonical serialization; parse_instance(serialize_instance(x)) == x and
/// serialize(parse(t)) == t for canonical t.
std::string serialize_instance(const DetInstance& det);

enum class InstanceKind { uncorr, bou_s_c };

const char* to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string& name);

/**
 * Random benchmark instance. uncorr draws profits and weights independently
 * and uniformly from [1, 1000]; bou_s_c draws weights the same way and sets
 * p_i = w_i + profit_shift. Capacity defaults to floor(0.5 * sum of weights)
 * unless overridden. Same (kind, n, seed) always yields the same instance.
 */
DetInstance generate_instance(InstanceKind kind, int n, std::uint64_t seed,
                              long long profit_shift = 100,
                              std::optional<long long> capacity = std::nullopt);

/**
 * Converts a deterministic benchmark into a chance-constrained one: every
 * expected weight becomes w_i + gamma, and the capacity is raised to
 * B' = B + k*gamma where k is the largest m such that the m smallest
 * original weights fit into B (ties broken by original index).
 */
std::pair<CCInstance, AdaptationReport> adapt_instance(const DetInstance& det,
                                                       long long gamma,
                                                       WeightModel model,
                                                       double alpha);

/// Expected weight, variance and count of the selected items.
WeightStats weight_stats(const CCInstance& inst, const Solution& x);

long long profit(const CCInstance& inst, const Solution& x);
long long profit(const DetInstance& det, const Solution& x);

/**
 * Exact optimum of the deterministic instance by capacity-indexed dynamic
 * programming. Throws if the capacity exceeds the memory budget instead of
 * truncating.
 */
long long dp_optimum(const DetInstance& det);

/// JSON document for a chance-constrained instance:
/// {profits, expected_weights, model:{type, delta|beta|variances},
///  capacity, alpha}.
CCInstance cc_from_json_text(const std::string& text);
std::string cc_to_json_text(const CCInstance& inst);

}  // namespace ccknap
