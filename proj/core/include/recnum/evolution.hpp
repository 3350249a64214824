// evolution.hpp — the outer loop that alternates grammar-modification and
// communication phases, with a two-armed bandit deciding between the current
// grammar and one sampled alternative by communicative success.

#ifndef RECNUM_EVOLUTION_HPP
#define RECNUM_EVOLUTION_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "recnum/agents.hpp"
#include "recnum/mutation.hpp"

namespace recnum {

struct BanditState {
  std::array<double, 2> q{0.0, 0.0};  // arm 0 = current, arm 1 = alternative
  std::array<int, 2> pulls{0, 0};
  double alpha = 0.1;
  double epsilon = 0.2;
  // The selection rule picks the greedy arm with probability epsilon and the
  // least-explored arm otherwise (the reverse of conventional
  // epsilon-greedy); flip to get the conventional rule.
  bool flip_rule = false;
};

// Core selection rule given a uniform draw u in [0, 1): greedy arm when
// 1 - epsilon <= u (ties -> arm 0), else the arm with fewer pulls
// (ties -> arm 0).
int select_arm(const BanditState& state, double u);
int select_arm(const BanditState& state, std::mt19937_64& rng);

// q[arm] += alpha * (reward - q[arm]); pulls[arm] += 1.
void q_update(BanditState& state, int arm, double reward);

// The communication machinery the evolution loop drives.  The neural model
// below wraps the LSTM agents; tests substitute deterministic reward oracles.
class CommunicationModel {
 public:
  virtual ~CommunicationModel() = default;

  // Called once per phase before any round, with both competing lexicons.
  virtual void begin_phase(const Lexicon& current, const Lexicon& alternative) {
    (void)current;
    (void)alternative;
  }
  // One training round on the chosen grammar; returns the batch mean reward.
  virtual double train_round(int arm, const Lexicon& lexicon,
                             std::mt19937_64& rng) = 0;
  // Initial joint training on the starting lexicon; returns accuracy.
  virtual double pretrain(const Lexicon& lexicon, std::mt19937_64& rng) = 0;
  // Greedy evaluation snapshot.
  virtual double accuracy(const Lexicon& lexicon) = 0;
};

class NeuralCommunicationModel : public CommunicationModel {
 public:
  NeuralCommunicationModel(const AgentConfig& config, int pretrain_epochs,
                           std::uint64_t seed);

  void begin_phase(const Lexicon& current, const Lexicon& alternative) override;
  double train_round(int arm, const Lexicon& lexicon,
                     std::mt19937_64& rng) override;
  double pretrain(const Lexicon& lexicon, std::mt19937_64& rng) override;
  double accuracy(const Lexicon& lexicon) override;

  SpeakerPolicy& speaker() { return speaker_; }
  ListenerPolicy& listener() { return listener_; }
  AdamState& speaker_optimizer() { return speaker_opt_; }
  AdamState& listener_optimizer() { return listener_opt_; }

 private:
  AgentConfig config_;
  int pretrain_epochs_;
  SpeakerPolicy speaker_;
  ListenerPolicy listener_;
  AdamState speaker_opt_;
  AdamState listener_opt_;
  NeedDistribution dist_;  // need distribution restricted to numeral_range
};

struct EvolutionConfig {
  int max_steps = 100;
  int inner_iterations = 40000;  // communication rounds per phase
  int pretrain_epochs = 5000;
  int communication_range = 50;  // numerals the agents talk about
  int metric_support = 99;       // support for the recorded complexity metric
  double bandit_alpha = 0.1;
  double bandit_epsilon = 0.2;
  bool flip_epsilon_rule = false;
  AgentConfig agent;
};

struct TrajectoryRecord {
  int step = 0;  // 0 is the starting snapshot
  DMPair dm;
  int lexicon_size = 0;
  double avg_ms_complexity = 0.0;
  std::optional<MutationKind> mutation;  // alternative tried this step
  std::array<double, 2> q_final{0.0, 0.0};
  double accuracy = 0.0;
  std::uint64_t seed = 0;
};

// Runs the full loop: pretrain on the start grammar, then per step sample a
// valid alternative, reset the bandit, run inner communication rounds, and
// adopt the higher-Q grammar (ties keep the current one).  Returns one record
// per step plus the initial snapshot.  Deterministic given the engine state.
std::vector<TrajectoryRecord> run_evolution(const DMPair& start,
                                            const EvolutionConfig& config,
                                            CommunicationModel& model,
                                            std::mt19937_64& rng,
                                            std::uint64_t seed_label = 0);

// Convenience overload wiring up the neural model from the config.
std::vector<TrajectoryRecord> run_evolution(const DMPair& start,
                                            const EvolutionConfig& config,
                                            std::uint64_t seed);

}  // namespace recnum

#endif  // RECNUM_EVOLUTION_HPP
