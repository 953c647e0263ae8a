#include "ccknap/fitness.hpp"

#include <algorithm>

namespace ccknap {

SOFitness so_fitness(const CCInstance& inst, const Solution& x,
                     BoundMethod method) {
  const WeightStats stats = weight_stats(inst, x);
  const double bound = violation_bound_from_stats(inst, stats, method);
  SOFitness f;
  f.weight_excess = std::max(stats.expected - inst.capacity, 0.0);
  f.risk_excess = std::max(bound - inst.alpha, 0.0);
  f.profit = profit(inst, x);
  return f;
}

Cmp so_compare(const SOFitness& a, const SOFitness& b) {
  if (a.weight_excess != b.weight_excess)
    return a.weight_excess < b.weight_excess ? Cmp::better : Cmp::worse;
  if (a.risk_excess != b.risk_excess)
    return a.risk_excess < b.risk_excess ? Cmp::better : Cmp::worse;
  if (a.profit != b.profit)
    return a.profit > b.profit ? Cmp::better : Cmp::worse;
  return Cmp::equal;
}

MOFitness mo_fitness(const CCInstance& inst, const Solution& x,
                     BoundMethod method) {
  const WeightStats stats = weight_stats(inst, x);
  MOFitness f;
  if (stats.expected < inst.capacity) {
    f.risk = violation_bound_from_stats(inst, stats, method);
  } else {
    f.risk = 1.0 + (stats.expected - inst.capacity);
  }
  f.profit = f.risk <= inst.alpha
                 ? static_cast<double>(profit(inst, x))
                 : -1.0;
  return f;
}

}  // namespace ccknap
