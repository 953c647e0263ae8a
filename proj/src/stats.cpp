#include "ccknap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace ccknap {

namespace {

struct RankedPool {
  std::vector<double> ranks;        // mid-ranks, aligned with values
  std::vector<int> labels;          // group index per value
  double tie_term = 0.0;            // sum of t^3 - t over tie groups
  std::size_t size() const { return ranks.size(); }
};

// Pools the groups, sorts, and assigns mid-ranks to ties.
RankedPool rank_groups(const std::vector<std::vector<double>>& groups) {
  std::vector<std::pair<double, int>> values;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (double v : groups[g]) values.emplace_back(v, static_cast<int>(g));
  std::sort(values.begin(), values.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  RankedPool pool;
  pool.ranks.resize(values.size());
  pool.labels.resize(values.size());
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j].first == values[i].first) ++j;
    const double mid_rank =
        (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      pool.ranks[k] = mid_rank;
      pool.labels[k] = values[k].second;
    }
    const double t = static_cast<double>(j - i);
    if (j - i > 1) pool.tie_term += t * t * t - t;
    i = j;
  }
  return pool;
}

}  // namespace

double chi_squared_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (x <= 0.0) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, x));
}

KWResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2)
    throw std::invalid_argument("kruskal_wallis needs at least two groups");
  for (const auto& g : groups)
    if (g.empty())
      throw std::invalid_argument("kruskal_wallis groups must be nonempty");

  const RankedPool pool = rank_groups(groups);
  const double n_total = static_cast<double>(pool.size());

  // All observations identical: one big tie, no evidence of any difference.
  const double tie_denominator = n_total * n_total * n_total - n_total;
  const double correction =
      tie_denominator > 0.0 ? 1.0 - pool.tie_term / tie_denominator : 0.0;
  if (correction <= 0.0) return {0.0, 1.0};

  std::vector<double> rank_sum(groups.size(), 0.0);
  for (std::size_t i = 0; i < pool.size(); ++i)
    rank_sum[static_cast<std::size_t>(pool.labels[i])] += pool.ranks[i];

  const double grand_mean = (n_total + 1.0) / 2.0;
  double h = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double n_g = static_cast<double>(groups[g].size());
    const double mean_rank = rank_sum[g] / n_g;
    h += n_g * (mean_rank - grand_mean) * (mean_rank - grand_mean);
  }
  h *= 12.0 / (n_total * (n_total + 1.0));
  h /= correction;

  return {h, chi_squared_sf(h, static_cast<int>(groups.size()) - 1)};
}

double rank_sum_p_value(const std::vector<double>& a,
                        const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("rank_sum_p_value needs nonempty samples");
  const RankedPool pool = rank_groups({a, b});
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n_total = n1 + n2;

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool.labels[i] == 0) rank_sum_a += pool.ranks[i];

  const double u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
  const double mean_u = n1 * n2 / 2.0;
  const double variance =
      n1 * n2 / 12.0 *
      ((n_total + 1.0) - pool.tie_term / (n_total * (n_total - 1.0)));
  if (variance <= 0.0) return 1.0;

  double z = u - mean_u;
  // Continuity correction toward the mean.
  if (z > 0.5)
    z -= 0.5;
  else if (z < -0.5)
    z += 0.5;
  else
    z = 0.0;
  z /= std::sqrt(variance);
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

std::vector<std::vector<PairOutcome>> pairwise_posthoc(
    const std::vector<std::vector<double>>& groups, double family_alpha) {
  const std::size_t k = groups.size();
  if (k < 2)
    throw std::invalid_argument("pairwise_posthoc needs at least two groups");

  struct Pair {
    std::size_t i, j;
    double p;
    bool first_larger;  // group i stochastically larger than group j
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double p = rank_sum_p_value(groups[i], groups[j]);
      const RankedPool pool = rank_groups({groups[i], groups[j]});
      double mean_i = 0.0, mean_j = 0.0;
      for (std::size_t v = 0; v < pool.size(); ++v)
        (pool.labels[v] == 0 ? mean_i : mean_j) += pool.ranks[v];
      mean_i /= static_cast<double>(groups[i].size());
      mean_j /= static_cast<double>(groups[j].size());
      pairs.push_back({i, j, p, mean_i > mean_j});
    }
  }

  // Holm step-down over the pair p-values.
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].p < pairs[b].p;
  });
  std::vector<bool> rejected(pairs.size(), false);
  const double m = static_cast<double>(pairs.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const double level = family_alpha / (m - static_cast<double>(rank));
    if (pairs[order[rank]].p > level) break;
    rejected[order[rank]] = true;
  }

  std::vector<std::vector<PairOutcome>> outcome(
      k, std::vector<PairOutcome>(k, PairOutcome::no_difference));
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (!rejected[idx]) continue;
    const Pair& pair = pairs[idx];
    if (pair.first_larger) {
      outcome[pair.i][pair.j] = PairOutcome::first_better;
      outcome[pair.j][pair.i] = PairOutcome::second_better;
    } else {
      outcome[pair.i][pair.j] = PairOutcome::second_better;
      outcome[pair.j][pair.i] = PairOutcome::first_better;
    }
  }
  return outcome;
}

}  // namespace ccknap
