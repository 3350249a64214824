#include "recnum/evolution.hpp"

#include <algorithm>

namespace recnum {

int select_arm(const BanditState& state, double u) {
  bool greedy = state.flip_rule ? u < 1.0 - state.epsilon
                                : 1.0 - state.epsilon <= u;
  if (greedy) {
    return state.q[1] > state.q[0] ? 1 : 0;
  }
  return state.pulls[1] < state.pulls[0] ? 1 : 0;
}

int select_arm(const BanditState& state, std::mt19937_64& rng) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return select_arm(state, u);
}

void q_update(BanditState& state, int arm, double reward) {
  state.q[arm] += state.alpha * (reward - state.q[arm]);
  state.pulls[arm] += 1;
}

NeuralCommunicationModel::NeuralCommunicationModel(const AgentConfig& config,
                                                   int pretrain_epochs,
                                                   std::uint64_t seed)
    : config_(config),
      pretrain_epochs_(pretrain_epochs),
      speaker_(config, seed * 2 + 1),
      listener_(config, seed * 2 + 2),
      dist_(config.numeral_range) {}

void NeuralCommunicationModel::begin_phase(const Lexicon& current,
                                           const Lexicon& alternative) {
  speaker_.register_tokens(Vocabulary(current.dm()));
  speaker_.register_tokens(Vocabulary(alternative.dm()));
}

double NeuralCommunicationModel::train_round(int /*arm*/, const Lexicon& lexicon,
                                             std::mt19937_64& rng) {
  EpisodeBatch batch = play_batch(speaker_, listener_, lexicon, dist_, rng);
  UpdateDiagnostics diag =
      reinforce_update(speaker_, listener_, batch, speaker_opt_, listener_opt_);
  return diag.mean_reward;
}

double NeuralCommunicationModel::pretrain(const Lexicon& lexicon,
                                          std::mt19937_64& rng) {
  speaker_.register_tokens(Vocabulary(lexicon.dm()));
  return recnum::pretrain(speaker_, listener_, speaker_opt_, listener_opt_,
                          lexicon, dist_, pretrain_epochs_, rng);
}

double NeuralCommunicationModel::accuracy(const Lexicon& lexicon) {
  return greedy_accuracy(speaker_, listener_, lexicon, dist_);
}

namespace {

TrajectoryRecord make_record(int step, const DMPair& dm,
                             const NeedDistribution& metric_dist,
                             std::optional<MutationKind> mutation,
                             std::array<double, 2> q, double accuracy,
                             std::uint64_t seed) {
  return TrajectoryRecord{step,
                          dm,
                          lexicon_size(dm),
                          avg_ms_complexity(dm, metric_dist),
                          mutation,
                          q,
                          accuracy,
                          seed};
}

}  // namespace

std::vector<TrajectoryRecord> run_evolution(const DMPair& start,
                                            const EvolutionConfig& config,
                                            CommunicationModel& model,
                                            std::mt19937_64& rng,
                                            std::uint64_t seed_label) {
  const SearchBounds comm_bounds{config.communication_range, 0};
  if (!covers(start, comm_bounds)) {
    throw std::invalid_argument(
        "starting grammar does not cover the communication range");
  }
  NeedDistribution metric_dist(config.metric_support);

  // Alternatives must stay measurable on the metric support too when it
  // extends past the communication range.
  auto measurable = [&](const DMPair& dm) {
    return config.metric_support <= config.communication_range ||
           covers(dm, SearchBounds{config.metric_support, 0});
  };
  if (!measurable(start)) {
    throw std::invalid_argument(
        "starting grammar does not cover the metric support");
  }

  DMPair current = start;
  Lexicon current_lex = minimal_lexicon(current, comm_bounds);

  std::vector<TrajectoryRecord> records;
  records.reserve(config.max_steps + 1);

  double acc0 = model.pretrain(current_lex, rng);
  records.push_back(make_record(0, current, metric_dist, std::nullopt,
                                {0.0, 0.0}, acc0, seed_label));

  for (int step = 1; step <= config.max_steps; ++step) {
    std::vector<Neighbor> neighbors = valid_neighbors(current);
    neighbors.erase(std::remove_if(neighbors.begin(), neighbors.end(),
                                   [&](const Neighbor& n) {
                                     return !covers(n.dm, comm_bounds) ||
                                            !measurable(n.dm);
                                   }),
                    neighbors.end());
    if (neighbors.empty()) {
      records.push_back(make_record(step, current, metric_dist, std::nullopt,
                                    {0.0, 0.0}, model.accuracy(current_lex),
                                    seed_label));
      continue;
    }
    Neighbor alt = sample_alternative(neighbors, rng);
    Lexicon alt_lex = minimal_lexicon(alt.dm, comm_bounds);
    model.begin_phase(current_lex, alt_lex);

    BanditState bandit;
    bandit.alpha = config.bandit_alpha;
    bandit.epsilon = config.bandit_epsilon;
    bandit.flip_rule = config.flip_epsilon_rule;

    for (int j = 0; j < config.inner_iterations; ++j) {
      int arm = select_arm(bandit, rng);
      double reward =
          model.train_round(arm, arm == 0 ? current_lex : alt_lex, rng);
      q_update(bandit, arm, reward);
    }

    // Adopt the higher-valued grammar; exact ties keep the current one.
    if (bandit.q[1] > bandit.q[0]) {
      current = alt.dm;
      current_lex = std::move(alt_lex);
    }
    records.push_back(make_record(step, current, metric_dist, alt.kind,
                                  bandit.q, model.accuracy(current_lex),
                                  seed_label));
  }
  return records;
}

std::vector<TrajectoryRecord> run_evolution(const DMPair& start,
                                            const EvolutionConfig& config,
                                            std::uint64_t seed) {
  NeuralCommunicationModel model(config.agent, config.pretrain_epochs, seed);
  std::mt19937_64 rng(seed);
  return run_evolution(start, config, model, rng, seed);
}

}  // namespace recnum
