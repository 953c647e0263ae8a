#include "ccknap/ea.hpp"

#include <stdexcept>

#include "json.hpp"

namespace ccknap {

const char* to_string(Objective objective) {
  return objective == Objective::single ? "single" : "multi";
}

Solution mutate(const Solution& x, rng::Engine& eng) {
  Solution y = x;
  const double rate = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < y.bits.size(); ++i)
    if (rng::uniform01(eng) < rate) y.bits[i] ^= 1;
  return y;
}

Solution random_solution(int n, rng::Engine& eng) {
  Solution x(n);
  for (std::size_t i = 0; i < x.bits.size(); ++i)
    x.bits[i] = static_cast<std::uint8_t>(rng::below(eng, 2));
  return x;
}

namespace {

void check_run_config(const RunConfig& cfg) {
  if (cfg.budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (cfg.trace_stride < 1)
    throw std::invalid_argument("trace stride must be >= 1");
}

struct TraceRecorder {
  long long stride;
  std::vector<TracePoint>& trace;

  void record(long long evaluation,
              const std::optional<long long>& best_feasible) {
    if (evaluation == 1 || evaluation % stride == 0)
      trace.push_back({evaluation, best_feasible});
  }
  void finish(long long evaluation,
              const std::optional<long long>& best_feasible) {
    if (trace.empty() || trace.back().evaluation != evaluation)
      trace.push_back({evaluation, best_feasible});
  }
};

void raise_feasible(std::optional<long long>& best, long long candidate) {
  if (!best.has_value() || candidate > *best) best = candidate;
}

}  // namespace

RunResult run_one_plus_one(const CCInstance& inst, const RunConfig& cfg) {
  validate(inst);
  check_run_config(cfg);
  if (cfg.objective != Objective::single)
    throw std::invalid_argument("run_one_plus_one requires objective=single");

  rng::Engine eng(cfg.seed);
  RunResult result;
  result.objective = Objective::single;
  TraceRecorder recorder{cfg.trace_stride, result.trace};

  Solution x = random_solution(inst.n, eng);
  SOFitness fx = so_fitness(inst, x, cfg.method);
  long long evaluations = 1;
  if (feasible(fx)) raise_feasible(result.best_feasible_profit, fx.profit);
  recorder.record(evaluations, result.best_feasible_profit);

  while (evaluations < cfg.budget) {
    const SOFitness before = fx;
    Solution y = mutate(x, eng);
    const SOFitness fy = so_fitness(inst, y, cfg.method);
    ++evaluations;
    if (feasible(fy)) raise_feasible(result.best_feasible_profit, fy.profit);

    if (so_compare(fy, fx) != Cmp::worse) {
      x = std::move(y);
      fx = fy;
    }
    if (cfg.check_invariants && so_compare(fx, before) == Cmp::worse)
      throw std::logic_error("elitism violated");
    recorder.record(evaluations, result.best_feasible_profit);
  }
  recorder.finish(evaluations, result.best_feasible_profit);

  result.best = std::move(x);
  result.best_fitness = fx;
  result.evaluations_used = evaluations;
  return result;
}

bool mutually_nondominated(const std::vector<ArchiveEntry>& archive) {
  for (std::size_t i = 0; i < archive.size(); ++i)
    for (std::size_t j = 0; j < archive.size(); ++j)
      if (i != j && mo_dominates(archive[i].fitness, archive[j].fitness))
        return false;
  return true;
}

RunResult run_gsemo(const CCInstance& inst, const RunConfig& cfg) {
  validate(inst);
  check_run_config(cfg);
  if (cfg.objective != Objective::multi)
    throw std::invalid_argument("run_gsemo requires objective=multi");

  rng::Engine eng(cfg.seed);
  RunResult result;
  result.objective = Objective::multi;
  TraceRecorder recorder{cfg.trace_stride, result.trace};

  std::vector<ArchiveEntry>& archive = result.archive;
  {
    Solution x = random_solution(inst.n, eng);
    MOFitness fx = mo_fitness(inst, x, cfg.method);
    if (fx.risk <= inst.alpha)
      raise_feasible(result.best_feasible_profit,
                     static_cast<long long>(fx.profit));
    archive.push_back({std::move(x), fx});
  }
  long long evaluations = 1;
  recorder.record(evaluations, result.best_feasible_profit);

  while (evaluations < cfg.budget) {
    const std::size_t pick =
        static_cast<std::size_t>(rng::below(eng, archive.size()));
    Solution y = mutate(archive[pick].solution, eng);
    const MOFitness fy = mo_fitness(inst, y, cfg.method);
    ++evaluations;
    if (fy.risk <= inst.alpha)
      raise_feasible(result.best_feasible_profit,
                     static_cast<long long>(fy.profit));

    bool dominated = false;
    for (const ArchiveEntry& entry : archive) {
      if (mo_dominates(entry.fitness, fy)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      std::erase_if(archive, [&](const ArchiveEntry& entry) {
        return mo_dominates(fy, entry.fitness);
      });
      archive.push_back({std::move(y), fy});
      if (cfg.check_invariants && !mutually_nondominated(archive))
        throw std::logic_error("archive contains dominated entries");
    }
    recorder.record(evaluations, result.best_feasible_profit);
  }
  recorder.finish(evaluations, result.best_feasible_profit);

  // Cheap final safety net even outside debug mode.
  if (!mutually_nondominated(archive))
    throw std::logic_error("archive contains dominated entries");

  const ArchiveEntry* best = best_feasible(archive, inst.alpha);
  if (best != nullptr)
    raise_feasible(result.best_feasible_profit,
                   static_cast<long long>(best->fitness.profit));
  result.evaluations_used = evaluations;
  return result;
}

const ArchiveEntry* best_feasible(const std::vector<ArchiveEntry>& archive,
                                  double alpha) {
  const ArchiveEntry* best = nullptr;
  for (const ArchiveEntry& entry : archive) {
    if (entry.fitness.risk > alpha) continue;
    if (best == nullptr || entry.fitness.profit > best->fitness.profit)
      best = &entry;
  }
  return best;
}

std::string run_result_to_json_text(const RunResult& result,
                                    const RunConfig& cfg) {
  nlohmann::json doc;
  doc["config"] = {
      {"budget", cfg.budget},
      {"seed", cfg.seed},
      {"method", to_string(cfg.method)},
      {"objective", to_string(cfg.objective)},
      {"trace_stride", cfg.trace_stride},
  };
  if (result.best_feasible_profit.has_value())
    doc["best_feasible_profit"] = *result.best_feasible_profit;
  else
    doc["best_feasible_profit"] = nullptr;
  doc["evaluations"] = result.evaluations_used;

  nlohmann::json trace = nlohmann::json::array();
  for (const TracePoint& point : result.trace) {
    nlohmann::json entry;
    entry["evaluation"] = point.evaluation;
    if (point.best_feasible_profit.has_value())
      entry["best_feasible_profit"] = *point.best_feasible_profit;
    else
      entry["best_feasible_profit"] = nullptr;
    trace.push_back(std::move(entry));
  }
  doc["trace"] = std::move(trace);

  if (result.objective == Objective::single) {
    doc["best"] = {
        {"bits", result.best.to_string()},
        {"weight_excess", result.best_fitness.weight_excess},
        {"risk_excess", result.best_fitness.risk_excess},
        {"profit", result.best_fitness.profit},
    };
  } else {
    nlohmann::json archive = nlohmann::json::array();
    for (const ArchiveEntry& entry : result.archive) {
      archive.push_back({
          {"bits", entry.solution.to_string()},
          {"profit", entry.fitness.profit},
          {"risk", entry.fitness.risk},
      });
    }
    doc["archive"] = std::move(archive);
  }
  return doc.dump(2) + "\n";
}

}  // namespace ccknap
