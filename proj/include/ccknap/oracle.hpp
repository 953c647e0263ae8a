#pragma once

#include <cstdint>

#include "ccknap/instance.hpp"
#include "ccknap/tail_bounds.hpp"

namespace ccknap {

/// Monte-Carlo estimate of the true violation probability.
struct MCEstimate {
  double p_hat = 0.0;
  long long samples = 0;
  double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / samples)
};

/**
 * Samples the selected items' weights from the instance model and counts
 * how often the total reaches the capacity. Deterministic given the seed.
 */
MCEstimate mc_violation(const CCInstance& inst, const Solution& x,
                        long long samples, std::uint64_t seed);

struct ExhaustiveResult {
  Solution best;
  long long profit = 0;
};

/**
 * Exact optimum of the chance-constrained problem with the bound standing in
 * for the true probability: maximizes profit over all 2^n solutions with
 * violation_bound <= alpha. Ties are broken by the lexicographically
 * smallest bit string, so the result is a pure function of the inputs.
 * Requires n <= 24.
 */
ExhaustiveResult exhaustive_optimum(const CCInstance& inst,
                                    BoundMethod method);

}  // namespace ccknap
