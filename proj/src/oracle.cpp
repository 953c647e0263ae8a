#include "ccknap/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccknap/rng.hpp"

namespace ccknap {

MCEstimate mc_violation(const CCInstance& inst, const Solution& x,
                        long long samples, std::uint64_t seed) {
  validate(inst);
  if (x.size() != inst.n)
    throw std::invalid_argument("solution length does not match instance");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");

  // Only the selected items contribute.
  std::vector<int> selected;
  for (int i = 0; i < inst.n; ++i)
    if (x.bits[static_cast<std::size_t>(i)]) selected.push_back(i);

  rng::Engine eng(seed);
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    double total = 0.0;
    for (int i : selected) {
      const double a = inst.expected_weights[static_cast<std::size_t>(i)];
      switch (inst.model.kind) {
        case ModelKind::deterministic:
          total += a;
          break;
        case ModelKind::uniform_additive:
          total += a + inst.model.delta * (2.0 * rng::uniform01(eng) - 1.0);
          break;
        case ModelKind::uniform_relative:
          total += a * (1.0 + inst.model.beta * (2.0 * rng::uniform01(eng) - 1.0));
          break;
        case ModelKind::normal:
          total += a + std::sqrt(inst.model.variances[static_cast<std::size_t>(
                           i)]) *
                           rng::normal(eng);
          break;
      }
    }
    if (total >= inst.capacity) ++hits;
  }

  MCEstimate estimate;
  estimate.samples = samples;
  estimate.p_hat =
      static_cast<double>(hits) / static_cast<double>(samples);
  estimate.std_error = std::sqrt(estimate.p_hat * (1.0 - estimate.p_hat) /
                                 static_cast<double>(samples));
  return estimate;
}

ExhaustiveResult exhaustive_optimum(const CCInstance& inst,
                                    BoundMethod method) {
  validate(inst);
  if (inst.n > 24)
    throw std::invalid_argument("exhaustive_optimum requires n <= 24");
  if (!admissible(method, inst.model))
    throw std::invalid_argument("inadmissible bound method for this model");

  const int n = inst.n;
  ExhaustiveResult result;
  result.best = Solution(n);
  result.profit = 0;  // the empty solution is always feasible

  Solution x(n);
  const std::uint32_t limit = 1u << n;
  // Bit n-1-i of the mask holds item i, so ascending masks enumerate bit
  // strings in lexicographic order and the first maximum seen is the
  // lexicographically smallest one.
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    for (int i = 0; i < n; ++i)
      x.bits[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>((mask >> (n - 1 - i)) & 1u);
    if (violation_bound(inst, x, method) > inst.alpha) continue;
    const long long p = profit(inst, x);
    if (p > result.profit) {
      result.profit = p;
      result.best = x;
    }
  }
  return result;
}

}  // namespace ccknap
