#pragma once

#include <optional>
#include <vector>

#include "ccknap/fitness.hpp"
#include "ccknap/instance.hpp"
#include "ccknap/rng.hpp"
#include "ccknap/tail_bounds.hpp"

namespace ccknap {

enum class Objective { single, multi };

const char* to_string(Objective objective);

struct RunConfig {
  long long budget = 100000;  // total fitness evaluations, initial included
  std::uint64_t seed = 0;
  BoundMethod method = BoundMethod::cantelli;
  Objective objective = Objective::single;
  long long trace_stride = 1000;
  // When set, invariants (elitism, archive mutual non-dominance) are checked
  // after every step instead of only at termination.
  bool check_invariants = false;
};

struct TracePoint {
  long long evaluation = 0;
  std::optional<long long> best_feasible_profit;  // best seen so far
};

struct ArchiveEntry {
  Solution solution;
  MOFitness fitness;
};

struct RunResult {
  Objective objective = Objective::single;
  Solution best;                      // single-objective final parent
  SOFitness best_fitness;             // its fitness
  std::vector<ArchiveEntry> archive;  // multi-objective final archive
  std::optional<long long> best_feasible_profit;
  long long evaluations_used = 0;
  std::vector<TracePoint> trace;
};

/// Standard bit mutation: each bit flips independently with probability 1/n.
/// The zero-flip outcome is returned unchanged (no resampling).
Solution mutate(const Solution& x, rng::Engine& eng);

/// Uniform random point of {0,1}^n.
Solution random_solution(int n, rng::Engine& eng);

/**
 * Elitist (1+1) EA under the lexicographic fitness: start from a uniform
 * random solution, mutate, accept the child whenever it is at least as good
 * as the parent. Runs exactly cfg.budget evaluations.
 */
RunResult run_one_plus_one(const CCInstance& inst, const RunConfig& cfg);

/**
 * GSEMO: keeps an archive of mutually non-dominated solutions, mutates a
 * uniformly chosen member each step, inserts the child unless some member
 * weakly dominates it and then removes all members the child weakly
 * dominates.
 */
RunResult run_gsemo(const CCInstance& inst, const RunConfig& cfg);

/// Archive member with maximal profit among those with risk <= alpha;
/// nullptr if the archive holds no feasible point.
const ArchiveEntry* best_feasible(const std::vector<ArchiveEntry>& archive,
                                  double alpha);

/// True when no entry weakly dominates another distinct entry.
bool mutually_nondominated(const std::vector<ArchiveEntry>& archive);

/// JSON document with fields {config, best_feasible_profit, evaluations,
/// trace[], best (single) or archive[] (multi)}.
std::string run_result_to_json_text(const RunResult& result,
                                    const RunConfig& cfg);

}  // namespace ccknap
