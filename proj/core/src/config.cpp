#include "recnum/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace recnum {

namespace {

using nlohmann::json;

json agent_to_json(const AgentConfig& a) {
  return json{{"embedding_dim", a.embedding_dim},
              {"hidden_dim", a.hidden_dim},
              {"learning_rate", a.learning_rate},
              {"batch_size", a.batch_size},
              {"message_alphabet_size", a.message_alphabet_size},
              {"entropy_coefficient", a.entropy_coefficient},
              {"numeral_range", a.numeral_range},
              {"init_scale", a.init_scale},
              {"speaker_entropy", a.speaker_entropy}};
}

void agent_from_json(const json& j, AgentConfig& a) {
  a.embedding_dim = j.value("embedding_dim", a.embedding_dim);
  a.hidden_dim = j.value("hidden_dim", a.hidden_dim);
  a.learning_rate = j.value("learning_rate", a.learning_rate);
  a.batch_size = j.value("batch_size", a.batch_size);
  a.message_alphabet_size =
      j.value("message_alphabet_size", a.message_alphabet_size);
  a.entropy_coefficient = j.value("entropy_coefficient", a.entropy_coefficient);
  a.numeral_range = j.value("numeral_range", a.numeral_range);
  a.init_scale = j.value("init_scale", a.init_scale);
  a.speaker_entropy = j.value("speaker_entropy", a.speaker_entropy);
}

}  // namespace

void ExperimentConfig::apply_desk_scale() {
  evolution.agent.hidden_dim = 32;
  evolution.inner_iterations = 2000;
  evolution.pretrain_epochs = 2000;
  evolution.max_steps = 30;
}

std::string to_json(const ExperimentConfig& config) {
  json j;
  j["seed"] = config.seed;
  j["out_dir"] = config.out_dir;
  j["ga"] = json{
      {"population_size", config.ga.population_size},
      {"generations", config.ga.generations},
      {"max_mutations_per_offspring", config.ga.max_mutations_per_offspring},
      {"range_max", config.ga.range_max},
      {"support_max", config.ga.support_max},
      {"max_digits_init", config.ga.max_digits_init},
      {"max_multipliers_init", config.ga.max_multipliers_init}};
  j["evolution"] = json{{"max_steps", config.evolution.max_steps},
                        {"inner_iterations", config.evolution.inner_iterations},
                        {"pretrain_epochs", config.evolution.pretrain_epochs},
                        {"communication_range",
                         config.evolution.communication_range},
                        {"metric_support", config.evolution.metric_support},
                        {"bandit_alpha", config.evolution.bandit_alpha},
                        {"bandit_epsilon", config.evolution.bandit_epsilon},
                        {"flip_epsilon_rule",
                         config.evolution.flip_epsilon_rule},
                        {"agent", agent_to_json(config.evolution.agent)}};
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  ExperimentConfig c;
  c.seed = j.value("seed", c.seed);
  c.out_dir = j.value("out_dir", c.out_dir);
  if (j.contains("ga")) {
    const json& g = j["ga"];
    c.ga.population_size = g.value("population_size", c.ga.population_size);
    c.ga.generations = g.value("generations", c.ga.generations);
    c.ga.max_mutations_per_offspring = g.value(
        "max_mutations_per_offspring", c.ga.max_mutations_per_offspring);
    c.ga.range_max = g.value("range_max", c.ga.range_max);
    c.ga.support_max = g.value("support_max", c.ga.support_max);
    c.ga.max_digits_init = g.value("max_digits_init", c.ga.max_digits_init);
    c.ga.max_multipliers_init =
        g.value("max_multipliers_init", c.ga.max_multipliers_init);
  }
  if (j.contains("evolution")) {
    const json& e = j["evolution"];
    c.evolution.max_steps = e.value("max_steps", c.evolution.max_steps);
    c.evolution.inner_iterations =
        e.value("inner_iterations", c.evolution.inner_iterations);
    c.evolution.pretrain_epochs =
        e.value("pretrain_epochs", c.evolution.pretrain_epochs);
    c.evolution.communication_range =
        e.value("communication_range", c.evolution.communication_range);
    c.evolution.metric_support =
        e.value("metric_support", c.evolution.metric_support);
    c.evolution.bandit_alpha =
        e.value("bandit_alpha", c.evolution.bandit_alpha);
    c.evolution.bandit_epsilon =
        e.value("bandit_epsilon", c.evolution.bandit_epsilon);
    c.evolution.flip_epsilon_rule =
        e.value("flip_epsilon_rule", c.evolution.flip_epsilon_rule);
    if (e.contains("agent")) {
      agent_from_json(e["agent"], c.evolution.agent);
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return config_from_json(text);
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << to_json(config);
}

}  // namespace recnum
