#pragma once

#include "ccknap/instance.hpp"
#include "ccknap/tail_bounds.hpp"

namespace ccknap {

/**
 * Lexicographic fitness for single-objective search. Minimizes the
 * expected-weight excess over the capacity, then the excess of the
 * violation-probability bound over alpha, then maximizes profit.
 * Solutions whose expected weight is at or above the capacity carry the
 * sentinel bound 1, so risk_excess = 1 - alpha there.
 */
struct SOFitness {
  double weight_excess = 0.0;  // max{E_W(X) - B, 0}
  double risk_excess = 0.0;    // max{bound - alpha, 0}
  long long profit = 0;

  bool operator==(const SOFitness&) const = default;
};

enum class Cmp { worse, equal, better };

SOFitness so_fitness(const CCInstance& inst, const Solution& x,
                     BoundMethod method);

/// Lexicographic comparison of a against b: smaller weight_excess wins,
/// then smaller risk_excess, then larger profit. Total preorder.
Cmp so_compare(const SOFitness& a, const SOFitness& b);

/// A solution is feasible when both penalty tiers vanish, i.e. it satisfies
/// the chance constraint as certified by the configured bound.
inline bool feasible(const SOFitness& f) {
  return f.weight_excess == 0.0 && f.risk_excess == 0.0;
}

/**
 * Bi-objective fitness: risk is the violation bound for solutions whose
 * expected weight is below the capacity and 1 + (E_W - B) otherwise, so
 * risk <= 1 separates bound-governed points from expected-weight-infeasible
 * ones. profit is the real profit when risk <= alpha and -1 otherwise,
 * making every feasible solution dominate every infeasible one.
 */
struct MOFitness {
  double profit = 0.0;
  double risk = 0.0;

  bool operator==(const MOFitness&) const = default;
};

MOFitness mo_fitness(const CCInstance& inst, const Solution& x,
                     BoundMethod method);

/// Weak dominance: a is at least as profitable and at most as risky as b.
inline bool mo_dominates(const MOFitness& a, const MOFitness& b) {
  return a.profit >= b.profit && a.risk <= b.risk;
}

}  // namespace ccknap
