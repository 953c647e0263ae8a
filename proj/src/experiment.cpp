#include "ccknap/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "ccknap/oracle.hpp"
#include "ccknap/stats.hpp"
#include "ccknap/tail_bounds.hpp"

namespace ccknap {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

}  // namespace

const char* to_string(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::ea_deterministic: return "ea_deterministic";
    case AlgorithmId::ea_cantelli: return "ea_cantelli";
    case AlgorithmId::ea_chernoff: return "ea_chernoff";
    case AlgorithmId::gsemo_cantelli: return "gsemo_cantelli";
    case AlgorithmId::gsemo_chernoff: return "gsemo_chernoff";
  }
  return "?";
}

AlgorithmId algorithm_from_string(const std::string& name) {
  if (name == "ea_deterministic") return AlgorithmId::ea_deterministic;
  if (name == "ea_cantelli") return AlgorithmId::ea_cantelli;
  if (name == "ea_chernoff") return AlgorithmId::ea_chernoff;
  if (name == "gsemo_cantelli") return AlgorithmId::gsemo_cantelli;
  if (name == "gsemo_chernoff") return AlgorithmId::gsemo_chernoff;
  fail("unknown algorithm: " + name);
}

const char* to_string(UncertaintyKind kind) {
  switch (kind) {
    case UncertaintyKind::none: return "none";
    case UncertaintyKind::delta: return "delta";
    case UncertaintyKind::beta: return "beta";
  }
  return "?";
}

namespace {

bool uses_chernoff(AlgorithmId id) {
  return id == AlgorithmId::ea_chernoff || id == AlgorithmId::gsemo_chernoff;
}

bool is_deterministic(AlgorithmId id) {
  return id == AlgorithmId::ea_deterministic;
}

Objective objective_of(AlgorithmId id) {
  return (id == AlgorithmId::gsemo_cantelli ||
          id == AlgorithmId::gsemo_chernoff)
             ? Objective::multi
             : Objective::single;
}

BoundMethod method_of(AlgorithmId id) {
  return uses_chernoff(id) ? BoundMethod::chernoff : BoundMethod::cantelli;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

double parse_double(const std::string& token) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw std::runtime_error("invalid number: \"" + token + "\"");
  return value;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed to write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.instances.empty()) fail("config needs at least one instance");
  if (cfg.alphas.empty()) fail("config needs at least one alpha");
  if (cfg.algorithms.empty()) fail("config needs at least one algorithm");
  if (cfg.repetitions < 1) fail("repetitions must be >= 1");
  if (cfg.budget < 1) fail("budget must be >= 1");
  if (cfg.gamma < 0) fail("gamma must be nonnegative");
  if (cfg.trace_stride < 1) fail("trace stride must be >= 1");
  for (double a : cfg.alphas)
    if (!(a > 0.0 && a < 1.0)) fail("alphas must lie in (0, 1)");
  for (double d : cfg.deltas)
    if (!(d > 0.0)) fail("deltas must be positive");
  for (double b : cfg.betas)
    if (!(b >= 0.0 && b < 1.0)) fail("betas must lie in [0, 1)");
  for (AlgorithmId id : cfg.algorithms) {
    if (uses_chernoff(id) && cfg.deltas.empty())
      fail(std::string(to_string(id)) +
           " requires a nonempty deltas grid (admissibility)");
    if (!is_deterministic(id) && cfg.deltas.empty() && cfg.betas.empty())
      fail(std::string(to_string(id)) +
           " requires a deltas or betas grid");
  }
  for (const InstanceSpec& spec : cfg.instances) {
    if (spec.name.empty()) fail("instance specs need a name");
    if (!spec.generated && spec.file.empty())
      fail("instance spec " + spec.name + " names neither file nor generator");
    if (spec.generated && spec.n < 1)
      fail("instance spec " + spec.name + " needs n >= 1");
  }
}

ExperimentConfig config_from_json_text(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  for (const nlohmann::json& item : doc.at("instances")) {
    InstanceSpec spec;
    spec.name = item.at("name").get<std::string>();
    if (item.contains("file")) {
      spec.file = item.at("file").get<std::string>();
    } else {
      const nlohmann::json& gen = item.at("generate");
      spec.generated = true;
      spec.kind = instance_kind_from_string(gen.at("kind").get<std::string>());
      spec.n = gen.at("n").get<int>();
      spec.seed = gen.at("seed").get<std::uint64_t>();
      if (gen.contains("profit_shift"))
        spec.profit_shift = gen.at("profit_shift").get<long long>();
      if (gen.contains("capacity"))
        spec.capacity = gen.at("capacity").get<long long>();
    }
    cfg.instances.push_back(std::move(spec));
  }
  cfg.alphas = doc.at("alphas").get<std::vector<double>>();
  if (doc.contains("deltas"))
    cfg.deltas = doc.at("deltas").get<std::vector<double>>();
  if (doc.contains("betas"))
    cfg.betas = doc.at("betas").get<std::vector<double>>();
  for (const nlohmann::json& name : doc.at("algorithms"))
    cfg.algorithms.push_back(algorithm_from_string(name.get<std::string>()));
  if (doc.contains("repetitions"))
    cfg.repetitions = doc.at("repetitions").get<int>();
  if (doc.contains("budget")) cfg.budget = doc.at("budget").get<long long>();
  if (doc.contains("master_seed"))
    cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
  if (doc.contains("gamma")) cfg.gamma = doc.at("gamma").get<long long>();
  if (doc.contains("trace_stride"))
    cfg.trace_stride = doc.at("trace_stride").get<long long>();
  if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
  if (doc.contains("output_dir"))
    cfg.output_dir = doc.at("output_dir").get<std::string>();
  validate(cfg);
  return cfg;
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  nlohmann::json instances = nlohmann::json::array();
  for (const InstanceSpec& spec : cfg.instances) {
    nlohmann::json item;
    item["name"] = spec.name;
    if (spec.generated) {
      nlohmann::json gen;
      gen["kind"] = to_string(spec.kind);
      gen["n"] = spec.n;
      gen["seed"] = spec.seed;
      gen["profit_shift"] = spec.profit_shift;
      if (spec.capacity.has_value()) gen["capacity"] = *spec.capacity;
      item["generate"] = std::move(gen);
    } else {
      item["file"] = spec.file;
    }
    instances.push_back(std::move(item));
  }
  nlohmann::json algorithms = nlohmann::json::array();
  for (AlgorithmId id : cfg.algorithms) algorithms.push_back(to_string(id));

  nlohmann::json doc;
  doc["instances"] = std::move(instances);
  doc["alphas"] = cfg.alphas;
  doc["deltas"] = cfg.deltas;
  doc["betas"] = cfg.betas;
  doc["algorithms"] = std::move(algorithms);
  doc["repetitions"] = cfg.repetitions;
  doc["budget"] = cfg.budget;
  doc["master_seed"] = cfg.master_seed;
  doc["gamma"] = cfg.gamma;
  doc["trace_stride"] = cfg.trace_stride;
  doc["threads"] = cfg.threads;
  doc["output_dir"] = cfg.output_dir;
  return doc.dump(2) + "\n";
}

std::string record_to_json_line(const RawRecord& record) {
  nlohmann::json doc;
  doc["instance"] = record.instance;
  doc["algorithm"] = to_string(record.algorithm);
  if (record.alpha.has_value())
    doc["alpha"] = *record.alpha;
  else
    doc["alpha"] = nullptr;
  doc["uncertainty_kind"] = to_string(record.uncertainty_kind);
  if (record.uncertainty_kind == UncertaintyKind::none)
    doc["uncertainty"] = nullptr;
  else
    doc["uncertainty"] = record.uncertainty;
  doc["repetition"] = record.repetition;
  doc["seed"] = record.seed;
  if (record.best_feasible_profit.has_value())
    doc["best_feasible_profit"] = *record.best_feasible_profit;
  else
    doc["best_feasible_profit"] = nullptr;
  doc["evaluations"] = record.evaluations;
  return doc.dump();
}

RawRecord record_from_json_line(const std::string& line) {
  const nlohmann::json doc = nlohmann::json::parse(line);
  RawRecord record;
  record.instance = doc.at("instance").get<std::string>();
  record.algorithm =
      algorithm_from_string(doc.at("algorithm").get<std::string>());
  if (!doc.at("alpha").is_null())
    record.alpha = doc.at("alpha").get<double>();
  const std::string kind = doc.at("uncertainty_kind").get<std::string>();
  if (kind == "delta")
    record.uncertainty_kind = UncertaintyKind::delta;
  else if (kind == "beta")
    record.uncertainty_kind = UncertaintyKind::beta;
  else
    record.uncertainty_kind = UncertaintyKind::none;
  if (!doc.at("uncertainty").is_null())
    record.uncertainty = doc.at("uncertainty").get<double>();
  record.repetition = doc.at("repetition").get<int>();
  record.seed = doc.at("seed").get<std::uint64_t>();
  if (!doc.at("best_feasible_profit").is_null())
    record.best_feasible_profit =
        doc.at("best_feasible_profit").get<long long>();
  record.evaluations = doc.at("evaluations").get<long long>();
  return record;
}

std::vector<RawRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RawRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json_line(line));
  }
  return records;
}

namespace {

struct Cell {
  std::string instance;
  AlgorithmId algorithm;
  std::optional<double> alpha;
  UncertaintyKind uncertainty_kind = UncertaintyKind::none;
  double uncertainty = 0.0;
  CCInstance cc;
  std::string tag;
};

std::string cell_tag(const Cell& cell) {
  std::string tag = cell.instance;
  tag += '|';
  tag += to_string(cell.algorithm);
  if (!is_deterministic(cell.algorithm)) {
    tag += "|alpha=";
    tag += format_double(*cell.alpha);
    if (cell.uncertainty_kind != UncertaintyKind::none) {
      tag += '|';
      tag += to_string(cell.uncertainty_kind);
      tag += '=';
      tag += format_double(cell.uncertainty);
    }
  }
  return tag;
}

DetInstance load_instance(const InstanceSpec& spec) {
  if (spec.generated)
    return generate_instance(spec.kind, spec.n, spec.seed, spec.profit_shift,
                             spec.capacity);
  std::ifstream in(spec.file);
  if (!in)
    throw std::runtime_error("cannot open instance file " + spec.file);
  return parse_instance(in);
}

std::vector<Cell> build_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (const InstanceSpec& spec : cfg.instances) {
    const DetInstance det = load_instance(spec);
    for (AlgorithmId id : cfg.algorithms) {
      if (is_deterministic(id)) {
        // One cell per instance: alpha and the uncertainty grids do not
        // touch a deterministic run, so its seed must not depend on them.
        Cell cell;
        cell.instance = spec.name;
        cell.algorithm = id;
        cell.cc = adapt_instance(det, cfg.gamma, WeightModel::deterministic(),
                                 cfg.alphas.front())
                      .first;
        cell.tag = cell_tag(cell);
        cells.push_back(std::move(cell));
        continue;
      }
      for (double alpha : cfg.alphas) {
        for (double delta : cfg.deltas) {
          Cell cell;
          cell.instance = spec.name;
          cell.algorithm = id;
          cell.alpha = alpha;
          cell.uncertainty_kind = UncertaintyKind::delta;
          cell.uncertainty = delta;
          cell.cc = adapt_instance(det, cfg.gamma,
                                   WeightModel::uniform_additive(delta), alpha)
                        .first;
          cell.tag = cell_tag(cell);
          cells.push_back(std::move(cell));
        }
        if (uses_chernoff(id)) continue;  // inadmissible on relative intervals
        for (double beta : cfg.betas) {
          Cell cell;
          cell.instance = spec.name;
          cell.algorithm = id;
          cell.alpha = alpha;
          cell.uncertainty_kind = UncertaintyKind::beta;
          cell.uncertainty = beta;
          cell.cc = adapt_instance(det, cfg.gamma,
                                   WeightModel::uniform_relative(beta), alpha)
                        .first;
          cell.tag = cell_tag(cell);
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

RawRecord execute_task(const ExperimentConfig& cfg, const Cell& cell,
                       int repetition) {
  RunConfig run_cfg;
  run_cfg.budget = cfg.budget;
  run_cfg.seed = rng::derive_seed(cfg.master_seed, cell.tag,
                                  static_cast<std::uint64_t>(repetition));
  run_cfg.method = method_of(cell.algorithm);
  run_cfg.objective = objective_of(cell.algorithm);
  run_cfg.trace_stride = cfg.trace_stride;

  const RunResult result = run_cfg.objective == Objective::single
                               ? run_one_plus_one(cell.cc, run_cfg)
                               : run_gsemo(cell.cc, run_cfg);

  RawRecord record;
  record.instance = cell.instance;
  record.algorithm = cell.algorithm;
  record.alpha = cell.alpha;
  record.uncertainty_kind = cell.uncertainty_kind;
  record.uncertainty = cell.uncertainty;
  record.repetition = repetition;
  record.seed = run_cfg.seed;
  record.best_feasible_profit = result.best_feasible_profit;
  record.evaluations = result.evaluations_used;
  return record;
}

}  // namespace

ExperimentTable run_matrix(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<Cell> cells = build_cells(cfg);

  struct Task {
    const Cell* cell;
    int repetition;
  };
  std::vector<Task> tasks;
  tasks.reserve(cells.size() * static_cast<std::size_t>(cfg.repetitions));
  for (const Cell& cell : cells)
    for (int rep = 0; rep < cfg.repetitions; ++rep)
      tasks.push_back({&cell, rep});

  std::filesystem::create_directories(cfg.output_dir);
  const std::string raw_path =
      (std::filesystem::path(cfg.output_dir) / "raw_runs.jsonl").string();
  std::ofstream raw_out(raw_path, std::ios::binary | std::ios::trunc);
  if (!raw_out)
    throw std::runtime_error("cannot open " + raw_path + " for writing");

  std::vector<RawRecord> records(tasks.size());
  std::vector<char> done(tasks.size(), 0);

  // Tasks run on a small pool; records are committed to the raw file in task
  // order as soon as the prefix is complete, so partial output is always a
  // valid JSONL prefix and the bytes do not depend on the schedule.
  std::atomic<std::size_t> next_task{0};
  std::mutex commit_mutex;
  std::size_t committed = 0;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      const std::size_t index = next_task.fetch_add(1);
      if (index >= tasks.size()) return;
      try {
        RawRecord record =
            execute_task(cfg, *tasks[index].cell, tasks[index].repetition);
        std::lock_guard<std::mutex> lock(commit_mutex);
        records[index] = std::move(record);
        done[index] = 1;
        while (committed < tasks.size() && done[committed]) {
          raw_out << record_to_json_line(records[committed]) << '\n';
          raw_out.flush();
          ++committed;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(commit_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned thread_count =
      cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                      : std::max(1u, std::thread::hardware_concurrency());
  thread_count = std::min<unsigned>(
      thread_count, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  raw_out.close();

  ExperimentTable table = aggregate_records(cfg, records);
  const std::string table_path =
      (std::filesystem::path(cfg.output_dir) / "table.csv").string();
  write_file_atomic(table_path, emit_table(table));
  return table;
}

namespace {

struct RowKey {
  double alpha;
  UncertaintyKind kind;
  double value;
};

bool algorithm_present(AlgorithmId id, UncertaintyKind kind) {
  if (is_deterministic(id)) return true;
  if (kind == UncertaintyKind::beta) return !uses_chernoff(id);
  return true;
}

std::string render_marks(
    const std::vector<std::size_t>& columns,  // config index per group
    const std::vector<std::vector<PairOutcome>>& outcome, std::size_t self) {
  std::string marks;
  for (std::size_t g = 0; g < columns.size(); ++g) {
    if (g == self) continue;
    if (!marks.empty()) marks += ',';
    marks += std::to_string(columns[g] + 1);
    switch (outcome[self][g]) {
      case PairOutcome::first_better: marks += "(+)"; break;
      case PairOutcome::second_better: marks += "(-)"; break;
      case PairOutcome::no_difference: marks += "(.)"; break;
    }
  }
  return marks;
}

}  // namespace

ExperimentTable aggregate_records(const ExperimentConfig& cfg,
                                  const std::vector<RawRecord>& records) {
  validate(cfg);

  // Values keyed by cell, ordered by repetition.
  auto key_of = [](const RawRecord& r) {
    std::string key = r.instance;
    key += '|';
    key += to_string(r.algorithm);
    if (!is_deterministic(r.algorithm)) {
      key += "|a=";
      key += format_double(r.alpha.value_or(-1.0));
      key += '|';
      key += to_string(r.uncertainty_kind);
      key += '=';
      key += format_double(r.uncertainty);
    }
    return key;
  };
  std::map<std::string, std::vector<std::optional<long long>>> values;
  for (const RawRecord& record : records) {
    auto& slot = values[key_of(record)];
    if (static_cast<std::size_t>(record.repetition) >= slot.size())
      slot.resize(static_cast<std::size_t>(record.repetition) + 1);
    slot[static_cast<std::size_t>(record.repetition)] =
        record.best_feasible_profit.value_or(0);
  }

  auto cell_values = [&](const std::string& instance, AlgorithmId id,
                         double alpha, UncertaintyKind kind,
                         double uncertainty) -> std::vector<double> {
    RawRecord probe;
    probe.instance = instance;
    probe.algorithm = id;
    if (!is_deterministic(id)) {
      probe.alpha = alpha;
      probe.uncertainty_kind = kind;
      probe.uncertainty = uncertainty;
    }
    const auto it = values.find(key_of(probe));
    if (it == values.end())
      throw std::runtime_error("missing raw records for cell " +
                               key_of(probe));
    if (static_cast<int>(it->second.size()) != cfg.repetitions)
      throw std::runtime_error("cell " + key_of(probe) +
                               " does not have one record per repetition");
    std::vector<double> out;
    out.reserve(it->second.size());
    for (const auto& v : it->second) {
      if (!v.has_value())
        throw std::runtime_error("cell " + key_of(probe) +
                                 " is missing a repetition");
      out.push_back(static_cast<double>(*v));
    }
    return out;
  };

  std::vector<RowKey> row_keys;
  for (double alpha : cfg.alphas) {
    if (cfg.deltas.empty() && cfg.betas.empty()) {
      row_keys.push_back({alpha, UncertaintyKind::none, 0.0});
      continue;
    }
    for (double delta : cfg.deltas)
      row_keys.push_back({alpha, UncertaintyKind::delta, delta});
    for (double beta : cfg.betas)
      row_keys.push_back({alpha, UncertaintyKind::beta, beta});
  }

  ExperimentTable table;
  table.algorithms = cfg.algorithms;
  for (const InstanceSpec& spec : cfg.instances) {
    for (const RowKey& key : row_keys) {
      TableRow row;
      row.instance = spec.name;
      row.alpha = key.alpha;
      row.uncertainty_kind = key.kind;
      row.uncertainty = key.value;
      row.cells.resize(cfg.algorithms.size());

      std::vector<std::size_t> present_columns;
      std::vector<std::vector<double>> groups;
      for (std::size_t c = 0; c < cfg.algorithms.size(); ++c) {
        const AlgorithmId id = cfg.algorithms[c];
        if (!algorithm_present(id, key.kind)) continue;
        present_columns.push_back(c);
        groups.push_back(
            cell_values(spec.name, id, key.alpha, key.kind, key.value));
      }

      // Post-hoc marks are only attached when the omnibus test rejects at
      // the 5% level; otherwise every pair reads "no difference".
      std::vector<std::vector<PairOutcome>> outcome(
          groups.size(),
          std::vector<PairOutcome>(groups.size(), PairOutcome::no_difference));
      if (groups.size() >= 2) {
        const KWResult kw = kruskal_wallis(groups);
        if (kw.p_value < 0.05) outcome = pairwise_posthoc(groups);
      }

      for (std::size_t g = 0; g < present_columns.size(); ++g) {
        CellStats& cell = row.cells[present_columns[g]];
        cell.present = true;
        const std::vector<double>& sample = groups[g];
        double mean = 0.0;
        for (double v : sample) mean += v;
        mean /= static_cast<double>(sample.size());
        double var = 0.0;
        for (double v : sample) var += (v - mean) * (v - mean);
        cell.mean = mean;
        cell.stddev = sample.size() > 1
                          ? std::sqrt(var / static_cast<double>(sample.size() - 1))
                          : 0.0;
        if (present_columns.size() >= 2)
          cell.marks = render_marks(present_columns, outcome, g);
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string uncertainty_token(UncertaintyKind kind, double value) {
  if (kind == UncertaintyKind::none) return "none";
  return std::string(to_string(kind)) + "=" + format_double(value);
}

}  // namespace

std::string emit_table(const ExperimentTable& table) {
  std::ostringstream out;
  out << "instance,alpha,uncertainty";
  for (AlgorithmId id : table.algorithms) {
    const std::string name = to_string(id);
    out << ',' << name << "_mean," << name << "_std," << name << "_stat";
  }
  out << '\n';
  for (const TableRow& row : table.rows) {
    out << csv_quote(row.instance) << ',' << format_double(row.alpha) << ','
        << uncertainty_token(row.uncertainty_kind, row.uncertainty);
    for (const CellStats& cell : row.cells) {
      if (!cell.present) {
        out << ",,,";
        continue;
      }
      out << ',' << format_double(cell.mean) << ',' << format_double(cell.stddev)
          << ',' << csv_quote(cell.marks);
    }
    out << '\n';
  }
  return out.str();
}

ExperimentTable parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty table CSV");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || (header.size() - 3) % 3 != 0)
    throw std::runtime_error("malformed table CSV header");

  ExperimentTable table;
  for (std::size_t c = 3; c < header.size(); c += 3) {
    const std::string& name = header[c];
    const std::string suffix = "_mean";
    if (name.size() <= suffix.size() ||
        name.substr(name.size() - suffix.size()) != suffix)
      throw std::runtime_error("malformed table CSV column: " + name);
    table.algorithms.push_back(
        algorithm_from_string(name.substr(0, name.size() - suffix.size())));
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("table CSV row has wrong field count");
    TableRow row;
    row.instance = fields[0];
    row.alpha = parse_double(fields[1]);
    const std::string& token = fields[2];
    if (token == "none") {
      row.uncertainty_kind = UncertaintyKind::none;
    } else {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("malformed uncertainty token: " + token);
      const std::string kind = token.substr(0, eq);
      row.uncertainty_kind =
          kind == "delta" ? UncertaintyKind::delta : UncertaintyKind::beta;
      row.uncertainty = parse_double(token.substr(eq + 1));
    }
    for (std::size_t c = 3; c < fields.size(); c += 3) {
      CellStats cell;
      if (!fields[c].empty()) {
        cell.present = true;
        cell.mean = parse_double(fields[c]);
        cell.stddev = parse_double(fields[c + 1]);
        cell.marks = fields[c + 2];
      }
      row.cells.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string emit_fig1(const std::vector<double>& eps_values, double e_min,
                      double e_max, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(e_min > 0.0) || e_max < e_min)
    throw std::invalid_argument("expected-value grid must be positive");
  std::ostringstream out;
  out << "epsilon,E,var_star\n";
  for (double eps : eps_values) {
    for (int i = 0; i < steps; ++i) {
      const double e = steps == 1 ? e_min
                                  : e_min + (e_max - e_min) *
                                                static_cast<double>(i) /
                                                static_cast<double>(steps - 1);
      double var_star = std::numeric_limits<double>::quiet_NaN();
      try {
        var_star = crossover_variance(eps, e);
      } catch (const std::domain_error&) {
        // row kept, marked invalid via nan
      }
      out << format_double(eps) << ',' << format_double(e) << ','
          << format_double(var_star) << '\n';
    }
  }
  return out.str();
}

std::string emit_fig2(const ExperimentTable& table, const std::string& instance,
                      UncertaintyKind kind, double uncertainty) {
  std::ostringstream out;
  out << "algorithm,alpha,mean_profit\n";
  for (std::size_t c = 0; c < table.algorithms.size(); ++c) {
    for (const TableRow& row : table.rows) {
      if (row.instance != instance || row.uncertainty_kind != kind ||
          row.uncertainty != uncertainty)
        continue;
      if (!row.cells[c].present) continue;
      out << to_string(table.algorithms[c]) << ',' << format_double(row.alpha)
          << ',' << format_double(row.cells[c].mean) << '\n';
    }
  }
  return out.str();
}

}  // namespace ccknap
