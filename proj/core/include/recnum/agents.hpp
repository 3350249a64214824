// agents.hpp — speaker/listener sequence policies for the numeral signaling
// game.  The speaker reads an expression token by token and emits one message
// symbol per token; the listener consumes the whole message and guesses the
// numeral.  Both are single-layer LSTMs trained jointly with REINFORCE.
//
// Parameters live in one flat vector per policy so optimizer steps, gradient
// checks and checkpointing all operate on plain arrays.  The speaker's token
// embedding is keyed by absolute token identity (numeral value or operator),
// so rows survive grammar mutations and new numerals get freshly seeded rows.

#ifndef RECNUM_AGENTS_HPP
#define RECNUM_AGENTS_HPP

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "recnum/lexicon.hpp"
#include "recnum/metrics.hpp"

namespace recnum {

// Expression tokens: the three operators plus every numeral, identified by
// value rather than by position in some per-grammar vocabulary.
using Token = int;
inline constexpr Token kTokenMul = 0;
inline constexpr Token kTokenPlus = 1;
inline constexpr Token kTokenMinus = 2;
constexpr Token numeral_token(int n) { return n + 2; }
std::string token_text(Token t);

struct OutOfVocabulary : std::runtime_error {
  explicit OutOfVocabulary(const std::string& what)
      : std::runtime_error(what) {}
};

// The token set of one grammar: its digits, multipliers and the operators.
class Vocabulary {
 public:
  explicit Vocabulary(const DMPair& dm);

  bool contains(Token t) const;
  const std::vector<Token>& tokens() const { return tokens_; }  // sorted

 private:
  std::vector<Token> tokens_;
};

// Render-order token ids; length equals ms_complexity(expr).  Throws
// OutOfVocabulary when the expression uses symbols the vocabulary lacks
// (the usual sign of a stale vocabulary after a grammar mutation).
std::vector<Token> tokenize(const NumExpr& expr, const Vocabulary& vocab);

// REINFORCE baseline: the batch mean reward, or a per-target leave-one-out
// mean (same-target items in the batch, excluding the item itself).  The
// per-target form keeps the advantage informative when the need distribution
// concentrates most of a batch on one numeral.
enum class BaselineMode { BatchMean, TargetMean };

struct AgentConfig {
  int embedding_dim = 5;
  int hidden_dim = 100;
  double learning_rate = 0.002;
  int batch_size = 32;
  int message_alphabet_size = 64;
  double entropy_coefficient = 0.01;  // listener only (flag below to extend)
  int numeral_range = 50;             // listener classifies 1..numeral_range
  double init_scale = 0.1;            // uniform [-s, s] parameter init
  bool speaker_entropy = false;
  BaselineMode baseline = BaselineMode::TargetMean;
};

enum class Mode { Sample, Greedy };

class SpeakerPolicy {
 public:
  SpeakerPolicy(const AgentConfig& config, std::uint64_t seed);

  const AgentConfig& config() const { return config_; }

  // Creates embedding rows for any unseen tokens.  Row initialization is a
  // pure function of (seed, token), so registration order never matters.
  void register_tokens(const Vocabulary& vocab);
  void register_token(Token t);
  bool knows_token(Token t) const;
  const std::map<Token, int>& token_rows() const { return token_rows_; }
  std::uint64_t embed_seed() const { return embed_seed_; }

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }

  // Rebuilds a policy from checkpoint state; rows must be a dense 0..n-1
  // mapping consistent with the parameter vector's size.
  static SpeakerPolicy restore(const AgentConfig& config,
                               std::uint64_t embed_seed,
                               std::map<Token, int> rows,
                               std::vector<double> params);

 private:
  friend struct SpeakerNet;
  AgentConfig config_;
  std::uint64_t embed_seed_;
  std::vector<double> params_;
  std::map<Token, int> token_rows_;
};

class ListenerPolicy {
 public:
  ListenerPolicy(const AgentConfig& config, std::uint64_t seed);

  const AgentConfig& config() const { return config_; }

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }

  static ListenerPolicy restore(const AgentConfig& config,
                                std::vector<double> params);

 private:
  friend struct ListenerNet;
  AgentConfig config_;
  std::vector<double> params_;
};

struct SpeakResult {
  std::vector<int> symbols;       // one per input token
  std::vector<double> log_probs;  // log pi(symbol_t), per step
};

// Runs the speaker over a token sequence.  Sample mode draws each symbol from
// the per-step softmax; greedy takes the argmax and is deterministic.
SpeakResult speak(const SpeakerPolicy& policy, const std::vector<Token>& tokens,
                  std::mt19937_64& rng, Mode mode);

struct ListenResult {
  int guess = 0;          // numeral in [1, numeral_range]
  double log_prob = 0.0;  // log pi(guess)
  double entropy = 0.0;   // entropy of the classification distribution
};

ListenResult listen(const ListenerPolicy& policy,
                    const std::vector<int>& message, std::mt19937_64& rng,
                    Mode mode);

// Per-step speaker output distributions / final listener distribution, for
// inspection and statistical tests.
std::vector<std::vector<double>> speaker_step_distributions(
    const SpeakerPolicy& policy, const std::vector<Token>& tokens);
std::vector<double> listener_distribution(const ListenerPolicy& policy,
                                          const std::vector<int>& message);

struct EpisodeBatch {
  std::vector<int> targets;
  std::vector<std::vector<Token>> expressions;
  std::vector<std::vector<int>> messages;
  std::vector<int> guesses;
  std::vector<double> rewards;  // 1.0 iff guess == target
  std::vector<std::vector<double>> speaker_log_probs;
  std::vector<double> listener_log_probs;
  std::vector<double> listener_entropies;
};

// One batch of signaling episodes: targets drawn i.i.d. from dist, speaker
// and listener in sample mode, exact-match reward.  dist must not extend
// beyond the lexicon or the listener's numeral range.
EpisodeBatch play_batch(const SpeakerPolicy& speaker,
                        const ListenerPolicy& listener, const Lexicon& lexicon,
                        const NeedDistribution& dist, std::mt19937_64& rng);

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void fit(size_t n);  // grow (zero-filled) to n parameters
};

struct UpdateDiagnostics {
  double baseline = 0.0;
  double mean_reward = 0.0;
  double speaker_loss = 0.0;
  double listener_loss = 0.0;
  double listener_entropy = 0.0;
  double speaker_grad_norm = 0.0;
  double listener_grad_norm = 0.0;
};

struct Gradients {
  std::vector<double> speaker;
  std::vector<double> listener;
  UpdateDiagnostics diagnostics;
};

// REINFORCE surrogate with batch-mean-reward baseline; the listener loss
// additionally subtracts entropy_coefficient * entropy.  Pure: replays the
// recorded episodes teacher-forced.
Gradients reinforce_gradients(const SpeakerPolicy& speaker,
                              const ListenerPolicy& listener,
                              const EpisodeBatch& batch);

// The scalar surrogates the gradients above differentiate; used by the
// finite-difference check.
double speaker_surrogate_loss(const SpeakerPolicy& speaker,
                              const EpisodeBatch& batch);
double listener_surrogate_loss(const ListenerPolicy& listener,
                               const EpisodeBatch& batch);

// Gradients + one Adam step per policy.  Throws on non-finite gradients.
UpdateDiagnostics reinforce_update(SpeakerPolicy& speaker,
                                   ListenerPolicy& listener,
                                   const EpisodeBatch& batch,
                                   AdamState& speaker_opt,
                                   AdamState& listener_opt);

// epochs x (play_batch + reinforce_update) on a fixed lexicon; returns the
// final greedy accuracy weighted by dist.
double pretrain(SpeakerPolicy& speaker, ListenerPolicy& listener,
                AdamState& speaker_opt, AdamState& listener_opt,
                const Lexicon& lexicon, const NeedDistribution& dist,
                int epochs, std::mt19937_64& rng);

// Greedy round-trip accuracy over the whole support, weighted by dist.
double greedy_accuracy(const SpeakerPolicy& speaker,
                       const ListenerPolicy& listener, const Lexicon& lexicon,
                       const NeedDistribution& dist);

}  // namespace recnum

#endif  // RECNUM_AGENTS_HPP
