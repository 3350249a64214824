// config.hpp — one serializable record of everything a run needs.  Loaded
// from JSON, overridden by CLI flags, and echoed verbatim into each output
// directory so results stay reproducible.

#ifndef RECNUM_CONFIG_HPP
#define RECNUM_CONFIG_HPP

#include <cstdint>
#include <string>

#include "recnum/evolution.hpp"
#include "recnum/pareto.hpp"

namespace recnum {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  GaConfig ga;
  EvolutionConfig evolution;

  // Reduced settings sized for quick desk runs: small hidden state, short
  // phases, fewer outer steps.
  void apply_desk_scale();
};

std::string to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& json_text);

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

}  // namespace recnum

#endif  // RECNUM_CONFIG_HPP
