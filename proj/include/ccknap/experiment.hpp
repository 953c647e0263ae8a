#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccknap/ea.hpp"
#include "ccknap/instance.hpp"

namespace ccknap {

/// One instance source: either a file in the canonical text format or a
/// generator specification.
struct InstanceSpec {
  std::string name;
  std::string file;  // empty when generated
  bool generated = false;
  InstanceKind kind = InstanceKind::uncorr;
  int n = 0;
  std::uint64_t seed = 0;
  long long profit_shift = 100;
  std::optional<long long> capacity;
};

enum class AlgorithmId {
  ea_deterministic,
  ea_cantelli,
  ea_chernoff,
  gsemo_cantelli,
  gsemo_chernoff,
};

const char* to_string(AlgorithmId id);
AlgorithmId algorithm_from_string(const std::string& name);

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<double> alphas;
  std::vector<double> deltas;  // uniform-additive uncertainty grid
  std::vector<double> betas;   // uniform-relative uncertainty grid
  std::vector<AlgorithmId> algorithms;
  int repetitions = 30;
  long long budget = 100000;
  std::uint64_t master_seed = 1;
  long long gamma = 100;  // benchmark adaptation shift
  long long trace_stride = 1000;
  int threads = 0;  // 0 = hardware concurrency
  std::string output_dir = "experiment_out";
};

/// Throws std::invalid_argument on inconsistent configs (empty grids,
/// chernoff algorithms without deltas, ...).
void validate(const ExperimentConfig& cfg);

ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& cfg);

enum class UncertaintyKind { none, delta, beta };

const char* to_string(UncertaintyKind kind);

/// One finished run. Deterministic runs carry no alpha/uncertainty: their
/// cell is identified by the instance alone, which is what makes the
/// deterministic column invariant across the alpha and delta grids.
struct RawRecord {
  std::string instance;
  AlgorithmId algorithm = AlgorithmId::ea_cantelli;
  std::optional<double> alpha;
  UncertaintyKind uncertainty_kind = UncertaintyKind::none;
  double uncertainty = 0.0;
  int repetition = 0;
  std::uint64_t seed = 0;
  std::optional<long long> best_feasible_profit;
  long long evaluations = 0;
};

std::string record_to_json_line(const RawRecord& record);
RawRecord record_from_json_line(const std::string& line);
std::vector<RawRecord> load_records(const std::string& path);

/// Aggregate of one (row, algorithm) cell.
struct CellStats {
  bool present = false;  // algorithm admissible in this row
  double mean = 0.0;
  double stddev = 0.0;
  std::string marks;  // e.g. "2(+),3(-),4(.)" against 1-based column ids
};

struct TableRow {
  std::string instance;
  double alpha = 0.0;
  UncertaintyKind uncertainty_kind = UncertaintyKind::none;
  double uncertainty = 0.0;
  std::vector<CellStats> cells;  // one per configured algorithm
};

struct ExperimentTable {
  std::vector<AlgorithmId> algorithms;
  std::vector<TableRow> rows;
};

/**
 * Executes every (cell, repetition) of the experiment matrix with the seed
 * derived from (master seed, cell tag, repetition). Raw records stream to
 * <output_dir>/raw_runs.jsonl in task order as runs finish (a truncated file
 * is still valid JSONL); the aggregated table goes to <output_dir>/table.csv
 * via write-then-rename. Runs execute on cfg.threads workers; the outputs
 * are byte-identical regardless of the schedule.
 */
ExperimentTable run_matrix(const ExperimentConfig& cfg);

/// Pure aggregation: the table is a function of config and records only, so
/// re-aggregating a raw-record file reproduces the table exactly.
ExperimentTable aggregate_records(const ExperimentConfig& cfg,
                                  const std::vector<RawRecord>& records);

/// CSV with one row per (instance, alpha, uncertainty) and mean/std/stat
/// columns per algorithm.
std::string emit_table(const ExperimentTable& table);
ExperimentTable parse_table_csv(const std::string& text);

/**
 * Crossover-curve data: header "epsilon,E,var_star", one row per (epsilon,
 * grid point). Rows where the Chernoff factor is numerically >= 1 carry
 * var_star = nan instead of being dropped.
 */
std::string emit_fig1(const std::vector<double>& eps_values, double e_min,
                      double e_max, int steps);

/// Grouped-bar data (algorithm, alpha, mean profit) for one instance and
/// one uncertainty level, varying alpha.
std::string emit_fig2(const ExperimentTable& table, const std::string& instance,
                      UncertaintyKind kind, double uncertainty);

/// Shortest representation that round-trips through parsing.
std::string format_double(double value);

/// Writes content to path via a temporary file and atomic rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ccknap
