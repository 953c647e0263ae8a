#pragma once

#include <vector>

namespace ccknap {

struct KWResult {
  double h = 0.0;
  double p_value = 1.0;
};

/**
 * Kruskal-Wallis rank test over k >= 2 groups, with mid-ranks for ties and
 * the standard tie-correction divisor. The p-value uses the chi-square
 * approximation with k - 1 degrees of freedom. When every observation is
 * identical the result is H = 0, p = 1.
 */
KWResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// Two-sided Mann-Whitney rank-sum p-value (normal approximation with tie
/// correction and continuity correction). Identical samples give p = 1.
double rank_sum_p_value(const std::vector<double>& a,
                        const std::vector<double>& b);

enum class PairOutcome { no_difference, first_better, second_better };

/**
 * All pairwise two-sided rank-sum comparisons at the given family level,
 * Holm-corrected. outcome[i][j] says how group i compares to group j
 * ("better" meaning stochastically larger); the matrix is antisymmetric.
 */
std::vector<std::vector<PairOutcome>> pairwise_posthoc(
    const std::vector<std::vector<double>>& groups, double family_alpha = 0.05);

/// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_squared_sf(double x, int dof);

}  // namespace ccknap
