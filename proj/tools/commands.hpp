// commands.hpp — implementation of the CLI subcommands, kept separate from
// argument parsing so the pieces stay testable.

#ifndef RECNUM_TOOLS_COMMANDS_HPP
#define RECNUM_TOOLS_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "recnum/config.hpp"

namespace recnum::cli {

// "1,2,3", "1..11" or a mix like "1..9,11".
std::vector<int> parse_numeral_list(const std::string& text);

struct AnalyzeArgs {
  std::vector<int> digits;
  std::vector<int> multipliers;
  int support = 99;
  std::string out_dir;  // empty: print only
};
int cmd_analyze(const AnalyzeArgs& args);

struct ParetoArgs {
  ExperimentConfig config;
  std::string overlay_csv;  // optional extra points for the plot
};
int cmd_pareto(const ParetoArgs& args);

struct EvolveArgs {
  ExperimentConfig config;
  std::optional<int> start_index;  // 1..8 reference starting grammar
  std::vector<int> digits;         // explicit start instead
  std::vector<int> multipliers;
  std::string frontier_csv;    // reuse an existing frontier for the plot
  std::string checkpoint_in;   // resume agents
  std::string checkpoint_out;  // save agents after the run
};
int cmd_evolve(const EvolveArgs& args);

struct ReportMArgs {
  std::string frontier_csv;
  std::string out_dir;
};
int cmd_report_m(const ReportMArgs& args);

struct GradcheckArgs {
  std::uint64_t seed = 1;
  int seeds = 3;
  double tolerance = 1e-4;
};
int cmd_gradcheck(const GradcheckArgs& args);

}  // namespace recnum::cli

#endif  // RECNUM_TOOLS_COMMANDS_HPP
