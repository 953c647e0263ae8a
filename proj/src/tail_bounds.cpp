#include "ccknap/tail_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ccknap {

const char* to_string(BoundMethod method) {
  return method == BoundMethod::cantelli ? "cantelli" : "chernoff";
}

BoundMethod bound_method_from_string(const std::string& name) {
  if (name == "cantelli" || name == "chebyshev") return BoundMethod::cantelli;
  if (name == "chernoff") return BoundMethod::chernoff;
  throw std::invalid_argument("unknown bound method: " + name);
}

double cantelli(const WeightStats& stats, double capacity) {
  if (stats.expected >= capacity) return 1.0;  // deviation below the mean
  if (stats.variance <= 0.0) return 0.0;
  const double gap = capacity - stats.expected;
  return stats.variance / (stats.variance + gap * gap);
}

double cantelli_uniform_additive(double delta, int count, double expected,
                                 double capacity) {
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  if (count < 0) throw std::invalid_argument("count must be nonnegative");
  WeightStats stats;
  stats.expected = expected;
  stats.variance = static_cast<double>(count) * delta * delta / 3.0;
  stats.count = count;
  return cantelli(stats, capacity);
}

double cantelli_uniform_relative(double beta, double expected,
                                 double capacity) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in [0, 1)");
  if (expected >= capacity) return 1.0;
  const double numerator = beta * beta * expected * expected;
  if (numerator <= 0.0) return 0.0;
  const double gap = capacity - expected;
  return numerator / (numerator + 3.0 * gap * gap);
}

double chernoff_uniform_additive(double delta, int count, double expected,
                                 double capacity) {
  if (count < 0) throw std::invalid_argument("count must be nonnegative");
  if (count >= 1 && delta <= 0.0)
    throw std::invalid_argument("Chernoff requires nonzero interval width");
  if (expected >= capacity) return 1.0;
  if (count == 0) return 0.0;
  const double spread = delta * static_cast<double>(count);
  // Weights are bounded by expected + spread, so violation is impossible at
  // or beyond that point.
  if (capacity >= expected + spread) return 0.0;
  const double eps = (capacity - expected) / spread;
  const double log_value =
      0.5 * static_cast<double>(count) * (eps - (1.0 + eps) * std::log1p(eps));
  const double value = std::exp(log_value);
  return value > 1.0 ? 1.0 : value;
}

namespace {

// log of the Chernoff factor C = (e^eps / (1+eps)^(1+eps))^E
double log_chernoff_factor(double eps, double expected) {
  return expected * (eps - (1.0 + eps) * std::log1p(eps));
}

}  // namespace

BoundPreference preferred_bound(double eps, double expected, double variance) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  if (expected <= 0.0) throw std::invalid_argument("expected must be positive");
  if (variance < 0.0)
    throw std::invalid_argument("variance must be nonnegative");

  const double log_c = log_chernoff_factor(eps, expected);
  if (log_c >= 0.0) return {BoundMethod::cantelli, true};
  const double c = std::exp(log_c);
  if (c >= 1.0) return {BoundMethod::cantelli, true};

  const double k = eps * expected;
  const double threshold = c * k * k / (1.0 - c);
  if (threshold <= variance) return {BoundMethod::chernoff, false};
  return {BoundMethod::cantelli, false};
}

double crossover_variance(double eps, double expected) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  if (expected <= 0.0) throw std::invalid_argument("expected must be positive");
  const double log_c = log_chernoff_factor(eps, expected);
  const double c = std::exp(log_c);
  if (log_c >= 0.0 || c >= 1.0)
    throw std::domain_error("Chernoff factor is numerically 1");
  const double k = eps * expected;
  return c * k * k / (1.0 - c);
}

bool admissible(BoundMethod method, const WeightModel& model) {
  if (method == BoundMethod::cantelli) return true;
  // Theorem requires one shared interval width; only the additive model (or
  // the degenerate deterministic one) qualifies.
  return model.kind == ModelKind::uniform_additive ||
         model.kind == ModelKind::deterministic;
}

double violation_bound_from_stats(const CCInstance& inst,
                                  const WeightStats& stats,
                                  BoundMethod method) {
  if (inst.model.kind == ModelKind::deterministic) {
    // Exact step: the weight equals its expectation, so the capacity is
    // violated iff the weight exceeds it.
    return stats.expected > inst.capacity ? 1.0 : 0.0;
  }
  if (method == BoundMethod::cantelli) return cantelli(stats, inst.capacity);
  if (inst.model.kind != ModelKind::uniform_additive)
    throw std::invalid_argument(
        std::string("inadmissible method: chernoff requires the "
                    "uniform_additive model, instance uses ") +
        to_string(inst.model.kind));
  return chernoff_uniform_additive(inst.model.delta, stats.count,
                                   stats.expected, inst.capacity);
}

double violation_bound(const CCInstance& inst, const Solution& x,
                       BoundMethod method) {
  return violation_bound_from_stats(inst, weight_stats(inst, x), method);
}

}  // namespace ccknap
