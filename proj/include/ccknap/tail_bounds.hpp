#pragma once

#include "ccknap/instance.hpp"

namespace ccknap {

/// Estimator used to upper-bound the constraint-violation probability
/// Pr(W(X) >= B). chernoff is only admissible for the uniform-additive
/// model, whose shared interval width allows the weights to be normalized
/// into [0, 1].
enum class BoundMethod { cantelli, chernoff };

const char* to_string(BoundMethod method);
BoundMethod bound_method_from_string(const std::string& name);

/**
 * One-sided Chebyshev (Cantelli) bound: Var / (Var + (B - E)^2) for E < B.
 * Returns 0 for zero variance below the bound and the sentinel 1 whenever
 * E >= B (the inequality only covers deviations above the mean).
 */
double cantelli(const WeightStats& stats, double capacity);

/**
 * Cantelli specialized to the uniform-additive model; identical to
 * cantelli() with variance count * delta^2 / 3.
 */
double cantelli_uniform_additive(double delta, int count, double expected,
                                 double capacity);

/// Cantelli specialized to the uniform-relative model, using the variance
/// upper bound beta^2 E^2 / 3 derived from the expected weight alone.
double cantelli_uniform_relative(double beta, double expected,
                                 double capacity);

/**
 * Chernoff bound for the uniform-additive model. With
 * eps = (B - E) / (delta * count) the value is
 * exp((count / 2) * (eps - (1 + eps) * log(1 + eps))), evaluated in log
 * space. Sentinels: 1 for E >= B, 0 for an empty selection, and 0 whenever
 * B >= E + delta * count (the weights are bounded, so violation is
 * impossible there even though the raw formula stays positive).
 *
 * Throws std::invalid_argument when delta <= 0 and the selection is
 * nonempty.
 */
double chernoff_uniform_additive(double delta, int count, double expected,
                                 double capacity);

struct BoundPreference {
  BoundMethod method = BoundMethod::cantelli;
  // Set when the Chernoff factor C = (e^eps / (1+eps)^(1+eps))^E is
  // numerically 1 (eps underflow); the comparison is then meaningless and
  // cantelli is reported.
  bool degenerate = false;
};

/**
 * Which bound is tighter for a variable with expected value E, variance Var
 * and relative deviation eps: chernoff iff C (eps E)^2 / (1 - C) <= Var with
 * C = (e^eps / (1+eps)^(1+eps))^E. Equality prefers chernoff.
 */
BoundPreference preferred_bound(double eps, double expected, double variance);

/**
 * The variance at which both bounds coincide for fixed (eps, E); above it
 * chernoff is tighter, below it cantelli. Throws std::domain_error when the
 * Chernoff factor is numerically >= 1.
 */
double crossover_variance(double eps, double expected);

/// True when the method may be applied to the model.
bool admissible(BoundMethod method, const WeightModel& model);

/**
 * Upper bound on Pr(W(X) >= B) for one solution. Dispatches on the model:
 * the deterministic model yields an exact 0/1 step (0 iff the weight fits
 * the capacity), cantelli applies to every model via weight_stats, chernoff
 * only to uniform_additive. Throws std::invalid_argument for inadmissible
 * method/model pairs.
 */
double violation_bound(const CCInstance& inst, const Solution& x,
                       BoundMethod method);

/// violation_bound on precomputed stats (same dispatch, no re-scan).
double violation_bound_from_stats(const CCInstance& inst,
                                  const WeightStats& stats,
                                  BoundMethod method);

}  // namespace ccknap
