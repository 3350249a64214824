// recnum — numeral-grammar efficiency experiments.
//
//   recnum analyze --D 1..9,11 --M 10
//   recnum pareto --seed 7 --out runs/pareto
//   recnum evolve --start 2 --desk-scale --out runs/evolve2
//   recnum report-m runs/pareto/frontier.csv --out runs/pareto
//   recnum gradcheck

#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "recnum/csv.hpp"
#include "recnum/lexicon.hpp"

namespace {

using recnum::ExperimentConfig;

// Flags shared by the experiment subcommands; resolution order is
// defaults -> --config file -> --desk-scale -> explicit flags.
struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  bool desk_scale = false;
  std::optional<int> range;
  std::optional<int> support;
  std::optional<std::string> out_dir;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_flag("--desk-scale", desk_scale,
                  "reduced configuration for quick runs");
    cmd->add_option("--range", range, "communication range upper bound");
    cmd->add_option("--support", support,
                    "need-distribution support upper bound");
    cmd->add_option("--out", out_dir, "output directory");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_path.empty()) config = recnum::load_config(config_path);
    if (desk_scale) config.apply_desk_scale();
    if (seed) config.seed = *seed;
    if (range) {
      config.evolution.communication_range = *range;
      config.evolution.agent.numeral_range = *range;
    }
    if (support) {
      config.evolution.metric_support = *support;
      config.ga.support_max = *support;
      config.ga.range_max = *support;
    }
    if (out_dir) config.out_dir = *out_dir;
    return config;
  }
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recursive numeral system experiments"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "minimal language and metrics for one grammar");
  std::string analyze_d, analyze_m;
  CommonFlags analyze_flags;
  analyze->add_option("--D", analyze_d, "digit set, e.g. 1..9,11")
      ->required();
  analyze->add_option("--M", analyze_m, "multiplier set, e.g. 10");
  analyze_flags.attach(analyze);

  // pareto
  auto* pareto =
      app.add_subcommand("pareto", "estimate the Pareto frontier with the GA");
  CommonFlags pareto_flags;
  std::optional<int> population, generations;
  std::string overlay;
  pareto_flags.attach(pareto);
  pareto->add_option("--population", population, "GA population size");
  pareto->add_option("--generations", generations, "GA generations");
  pareto->add_option("--overlay", overlay,
                     "CSV of extra points to draw on the chart");

  // evolve
  auto* evolve = app.add_subcommand(
      "evolve", "run the bandit-driven grammar evolution loop");
  CommonFlags evolve_flags;
  std::optional<int> start_index, max_steps, inner_iterations, pretrain_epochs,
      hidden_dim;
  std::string evolve_d, evolve_m, frontier_csv, checkpoint_in, checkpoint_out;
  evolve_flags.attach(evolve);
  evolve->add_option("--start", start_index,
                     "starting grammar index (1..8)");
  evolve->add_option("--D", evolve_d, "explicit starting digit set");
  evolve->add_option("--M", evolve_m, "explicit starting multiplier set");
  evolve->add_option("--max-steps", max_steps, "outer steps");
  evolve->add_option("--inner-iterations", inner_iterations,
                     "communication rounds per phase");
  evolve->add_option("--pretrain-epochs", pretrain_epochs,
                     "pretraining batches");
  evolve->add_option("--hidden-dim", hidden_dim, "LSTM hidden size");
  evolve->add_option("--frontier", frontier_csv,
                     "existing frontier CSV for the chart");
  evolve->add_option("--checkpoint-in", checkpoint_in,
                     "agent checkpoint to resume from");
  evolve->add_option("--checkpoint-out", checkpoint_out,
                     "write agent checkpoint after the run");

  // report-m
  auto* report =
      app.add_subcommand("report-m", "|M| histogram over a frontier CSV");
  std::string report_csv;
  std::string report_out;
  report->add_option("frontier", report_csv, "frontier CSV file")->required();
  report->add_option("--out", report_out, "output directory");

  // gradcheck
  auto* gradcheck = app.add_subcommand(
      "gradcheck", "finite-difference check of the policy gradients");
  recnum::cli::GradcheckArgs gradcheck_args;
  gradcheck->add_option("--seed", gradcheck_args.seed, "first seed");
  gradcheck->add_option("--seeds", gradcheck_args.seeds, "number of seeds");
  gradcheck->add_option("--tolerance", gradcheck_args.tolerance,
                        "relative error tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) {
      recnum::cli::AnalyzeArgs args;
      args.digits = recnum::cli::parse_numeral_list(analyze_d);
      if (!analyze_m.empty()) {
        args.multipliers = recnum::cli::parse_numeral_list(analyze_m);
      }
      ExperimentConfig config = analyze_flags.resolve();
      args.support = config.evolution.metric_support;
      if (analyze_flags.out_dir) args.out_dir = *analyze_flags.out_dir;
      return recnum::cli::cmd_analyze(args);
    }
    if (app.got_subcommand(pareto)) {
      recnum::cli::ParetoArgs args;
      args.config = pareto_flags.resolve();
      if (population) args.config.ga.population_size = *population;
      if (generations) args.config.ga.generations = *generations;
      args.overlay_csv = overlay;
      return recnum::cli::cmd_pareto(args);
    }
    if (app.got_subcommand(evolve)) {
      recnum::cli::EvolveArgs args;
      args.config = evolve_flags.resolve();
      if (max_steps) args.config.evolution.max_steps = *max_steps;
      if (inner_iterations) {
        args.config.evolution.inner_iterations = *inner_iterations;
      }
      if (pretrain_epochs) {
        args.config.evolution.pretrain_epochs = *pretrain_epochs;
      }
      if (hidden_dim) args.config.evolution.agent.hidden_dim = *hidden_dim;
      args.start_index = start_index;
      if (!evolve_d.empty()) {
        args.digits = recnum::cli::parse_numeral_list(evolve_d);
      }
      if (!evolve_m.empty()) {
        args.multipliers = recnum::cli::parse_numeral_list(evolve_m);
      }
      if (!args.start_index && args.digits.empty()) {
        throw std::invalid_argument("evolve needs --start or --D/--M");
      }
      args.frontier_csv = frontier_csv;
      args.checkpoint_in = checkpoint_in;
      args.checkpoint_out = checkpoint_out;
      return recnum::cli::cmd_evolve(args);
    }
    if (app.got_subcommand(report)) {
      recnum::cli::ReportMArgs args;
      args.frontier_csv = report_csv;
      args.out_dir = report_out;
      return recnum::cli::cmd_report_m(args);
    }
    if (app.got_subcommand(gradcheck)) {
      return recnum::cli::cmd_gradcheck(gradcheck_args);
    }
  } catch (const recnum::CoverageError& e) {
    std::cerr << "{\"error\":\"coverage\",\"message\":\""
              << json_escape(e.what()) << "\",\"uncoverable\":[";
    for (size_t i = 0; i < e.missing().size(); ++i) {
      if (i) std::cerr << ',';
      std::cerr << e.missing()[i];
    }
    std::cerr << "]}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"" << json_escape(e.what()) << "\"}\n";
    return 1;
  }
  return 0;
}
