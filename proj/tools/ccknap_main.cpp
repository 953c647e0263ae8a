// Command-line front end for the chance-constrained knapsack toolkit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccknap/ea.hpp"
#include "ccknap/experiment.hpp"
#include "ccknap/instance.hpp"
#include "ccknap/oracle.hpp"
#include "ccknap/tail_bounds.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  ccknap::write_file_atomic(path, content);
}

ccknap::WeightModel model_from_flags(const std::string& model_name,
                                     double delta, double beta,
                                     const std::vector<double>& variances) {
  switch (ccknap::model_kind_from_string(model_name)) {
    case ccknap::ModelKind::deterministic:
      return ccknap::WeightModel::deterministic();
    case ccknap::ModelKind::uniform_additive:
      return ccknap::WeightModel::uniform_additive(delta);
    case ccknap::ModelKind::uniform_relative:
      return ccknap::WeightModel::uniform_relative(beta);
    case ccknap::ModelKind::normal:
      return ccknap::WeightModel::normal(variances);
  }
  throw std::runtime_error("unreachable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chance-constrained knapsack toolkit"};
  app.require_subcommand(1);

  // ---- generate ------------------------------------------------------
  std::string gen_kind = "uncorr";
  int gen_n = 100;
  std::uint64_t gen_seed = 1;
  long long gen_shift = 100;
  long long gen_capacity = -1;
  std::string gen_output;
  CLI::App* generate = app.add_subcommand(
      "generate", "write a deterministic benchmark instance");
  generate->add_option("--kind", gen_kind, "uncorr or bou-s-c")
      ->check(CLI::IsMember({"uncorr", "bou-s-c"}));
  generate->add_option("--n", gen_n, "item count")->required();
  generate->add_option("--seed", gen_seed, "generator seed")->required();
  generate->add_option("--profit-shift", gen_shift,
                       "profit minus weight for bou-s-c");
  generate->add_option("--capacity", gen_capacity,
                       "override the default capacity of half total weight");
  generate->add_option("-o,--output", gen_output, "output file (default stdout)");

  // ---- adapt ---------------------------------------------------------
  std::string adapt_input;
  long long adapt_gamma = 100;
  std::string adapt_model = "uniform_additive";
  double adapt_delta = 25.0;
  double adapt_beta = 0.1;
  std::vector<double> adapt_variances;
  double adapt_alpha = 0.01;
  std::string adapt_output;
  CLI::App* adapt = app.add_subcommand(
      "adapt", "shift a deterministic instance into a chance-constrained one");
  adapt->add_option("-i,--input", adapt_input, "instance file")->required();
  adapt->add_option("--gamma", adapt_gamma, "weight shift");
  adapt->add_option("--model", adapt_model,
                    "deterministic|uniform_additive|uniform_relative|normal");
  adapt->add_option("--delta", adapt_delta, "additive interval half-width");
  adapt->add_option("--beta", adapt_beta, "relative interval fraction");
  adapt->add_option("--variances", adapt_variances,
                    "per-item variances for the normal model");
  adapt->add_option("--alpha", adapt_alpha, "violation probability budget");
  adapt->add_option("-o,--output", adapt_output, "output file (default stdout)");

  // ---- solve ---------------------------------------------------------
  std::string solve_instance;
  std::string solve_objective = "single";
  std::string solve_method = "cantelli";
  long long solve_budget = 100000;
  std::uint64_t solve_seed = 1;
  long long solve_stride = 1000;
  std::string solve_output;
  CLI::App* solve =
      app.add_subcommand("solve", "run one optimization and print the result");
  solve->add_option("-i,--instance", solve_instance,
                    "chance-constrained instance (json)")
      ->required();
  solve->add_option("--objective", solve_objective, "single or multi")
      ->check(CLI::IsMember({"single", "multi"}));
  solve->add_option("--method", solve_method, "cantelli or chernoff")
      ->check(CLI::IsMember({"cantelli", "chernoff"}));
  solve->add_option("--budget", solve_budget, "fitness evaluations");
  solve->add_option("--seed", solve_seed, "run seed");
  solve->add_option("--trace-stride", solve_stride,
                    "evaluations between trace samples");
  solve->add_option("-o,--output", solve_output, "output file (default stdout)");

  // ---- experiment ----------------------------------------------------
  std::string exp_config;
  std::uint64_t exp_seed = 0;
  std::string exp_output_dir;
  CLI::App* experiment =
      app.add_subcommand("experiment", "run a full experiment matrix");
  experiment->add_option("-c,--config", exp_config, "experiment config (json)")
      ->required();
  CLI::Option* exp_seed_option =
      experiment->add_option("--seed", exp_seed, "override the master seed");
  experiment->add_option("--output-dir", exp_output_dir,
                         "override the output directory");

  // ---- verify --------------------------------------------------------
  std::string verify_instance;
  std::string verify_solution;
  long long verify_samples = 100000;
  std::uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand(
      "verify", "check a solution against the bounds and Monte Carlo");
  verify->add_option("-i,--instance", verify_instance,
                     "chance-constrained instance (json)")
      ->required();
  verify->add_option("-s,--solution", verify_solution, "bit string")
      ->required();
  verify->add_option("--samples", verify_samples, "Monte Carlo samples");
  verify->add_option("--seed", verify_seed, "sampling seed");

  // ---- figures -------------------------------------------------------
  CLI::App* figures = app.add_subcommand("figures", "figure data as CSV");
  figures->require_subcommand(1);

  std::vector<double> fig1_eps = {0.01, 0.05, 0.1, 0.2, 0.3};
  double fig1_emin = 1.0;
  double fig1_emax = 50.0;
  int fig1_steps = 100;
  std::string fig1_output;
  CLI::App* fig1 = figures->add_subcommand(
      "fig1", "crossover variance curves over expected values");
  fig1->add_option("--eps", fig1_eps, "deviation values");
  fig1->add_option("--e-min", fig1_emin, "smallest expected value");
  fig1->add_option("--e-max", fig1_emax, "largest expected value");
  fig1->add_option("--steps", fig1_steps, "grid size");
  fig1->add_option("-o,--output", fig1_output, "output file (default stdout)");

  std::string fig2_table;
  std::string fig2_instance;
  std::string fig2_uncertainty;
  std::string fig2_output;
  CLI::App* fig2 = figures->add_subcommand(
      "fig2", "mean profit per algorithm across alpha values");
  fig2->add_option("--table", fig2_table, "table.csv from an experiment")
      ->required();
  fig2->add_option("--instance", fig2_instance, "instance name")->required();
  fig2->add_option("--uncertainty", fig2_uncertainty,
                   "slice, e.g. delta=25 or beta=0.1")
      ->required();
  fig2->add_option("-o,--output", fig2_output, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      std::optional<long long> capacity;
      if (gen_capacity >= 1) capacity = gen_capacity;
      const ccknap::DetInstance det = ccknap::generate_instance(
          ccknap::instance_kind_from_string(gen_kind), gen_n, gen_seed,
          gen_shift, capacity);
      write_output(gen_output, ccknap::serialize_instance(det));
    } else if (adapt->parsed()) {
      const ccknap::DetInstance det =
          ccknap::parse_instance(read_file(adapt_input));
      const auto [inst, report] = ccknap::adapt_instance(
          det, adapt_gamma,
          model_from_flags(adapt_model, adapt_delta, adapt_beta,
                           adapt_variances),
          adapt_alpha);
      write_output(adapt_output, ccknap::cc_to_json_text(inst));
      std::cerr << "k=" << report.k << " B=" << report.original_capacity
                << " B'=" << ccknap::format_double(report.adapted_capacity)
                << " gamma=" << report.gamma << "\n";
    } else if (solve->parsed()) {
      const ccknap::CCInstance inst =
          ccknap::cc_from_json_text(read_file(solve_instance));
      ccknap::RunConfig cfg;
      cfg.budget = solve_budget;
      cfg.seed = solve_seed;
      cfg.method = ccknap::bound_method_from_string(solve_method);
      cfg.trace_stride = solve_stride;
      cfg.objective = solve_objective == "multi" ? ccknap::Objective::multi
                                                 : ccknap::Objective::single;
      const ccknap::RunResult result =
          cfg.objective == ccknap::Objective::single
              ? ccknap::run_one_plus_one(inst, cfg)
              : ccknap::run_gsemo(inst, cfg);
      write_output(solve_output, ccknap::run_result_to_json_text(result, cfg));
    } else if (experiment->parsed()) {
      ccknap::ExperimentConfig cfg =
          ccknap::config_from_json_text(read_file(exp_config));
      if (exp_seed_option->count() > 0) cfg.master_seed = exp_seed;
      if (!exp_output_dir.empty()) cfg.output_dir = exp_output_dir;
      if (const char* env = std::getenv("CCKNAP_OUTPUT_DIR"))
        if (exp_output_dir.empty()) cfg.output_dir = env;
      ccknap::run_matrix(cfg);
      std::cout << "wrote " << cfg.output_dir << "/raw_runs.jsonl and "
                << cfg.output_dir << "/table.csv\n";
    } else if (verify->parsed()) {
      const ccknap::CCInstance inst =
          ccknap::cc_from_json_text(read_file(verify_instance));
      const ccknap::Solution x = ccknap::Solution::from_string(verify_solution);
      const ccknap::WeightStats stats = ccknap::weight_stats(inst, x);
      std::cout << "profit " << ccknap::profit(inst, x) << "\n"
                << "expected_weight " << ccknap::format_double(stats.expected)
                << " (capacity " << ccknap::format_double(inst.capacity)
                << ")\n"
                << "variance " << ccknap::format_double(stats.variance) << "\n";
      for (ccknap::BoundMethod method :
           {ccknap::BoundMethod::cantelli, ccknap::BoundMethod::chernoff}) {
        if (!ccknap::admissible(method, inst.model)) continue;
        const double bound = ccknap::violation_bound(inst, x, method);
        std::cout << ccknap::to_string(method) << "_bound "
                  << ccknap::format_double(bound)
                  << (bound <= inst.alpha ? " (feasible at alpha "
                                          : " (infeasible at alpha ")
                  << ccknap::format_double(inst.alpha) << ")\n";
      }
      const ccknap::MCEstimate est =
          ccknap::mc_violation(inst, x, verify_samples, verify_seed);
      std::cout << "mc_violation " << ccknap::format_double(est.p_hat)
                << " +/- " << ccknap::format_double(est.std_error) << " ("
                << est.samples << " samples)\n";
    } else if (fig1->parsed()) {
      write_output(fig1_output,
                   ccknap::emit_fig1(fig1_eps, fig1_emin, fig1_emax,
                                     fig1_steps));
    } else if (fig2->parsed()) {
      const ccknap::ExperimentTable table =
          ccknap::parse_table_csv(read_file(fig2_table));
      const auto eq = fig2_uncertainty.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("uncertainty must look like delta=25");
      const std::string kind_name = fig2_uncertainty.substr(0, eq);
      const double value = std::stod(fig2_uncertainty.substr(eq + 1));
      ccknap::UncertaintyKind kind;
      if (kind_name == "delta")
        kind = ccknap::UncertaintyKind::delta;
      else if (kind_name == "beta")
        kind = ccknap::UncertaintyKind::beta;
      else
        throw std::runtime_error("unknown uncertainty kind: " + kind_name);
      write_output(fig2_output,
                   ccknap::emit_fig2(table, fig2_instance, kind, value));
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
