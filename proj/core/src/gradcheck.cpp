#include "recnum/gradcheck.hpp"

#include <cmath>
#include <numeric>

#include "recnum/agents.hpp"

namespace recnum {

namespace {

template <typename Policy, typename LossFn>
std::vector<double> fd_gradient(Policy& policy, const LossFn& loss,
                                double h) {
  std::vector<double>& params = policy.parameters();
  std::vector<double> grad(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    double saved = params[i];
    params[i] = saved + h;
    double up = loss();
    params[i] = saved - h;
    double down = loss();
    params[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double rel_error(const std::vector<double>& analytic,
                 const std::vector<double>& fd) {
  double diff = 0.0, ref = 0.0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - fd[i]) * (analytic[i] - fd[i]);
    ref += fd[i] * fd[i];
  }
  diff = std::sqrt(diff);
  ref = std::sqrt(ref);
  if (ref < 1e-12) {
    return diff < 1e-10 ? 0.0 : 1.0;
  }
  return diff / ref;
}

}  // namespace

GradCheckResult gradient_check(std::uint64_t seed, double fd_step) {
  AgentConfig config;
  config.embedding_dim = 3;
  config.hidden_dim = 4;
  config.message_alphabet_size = 6;
  config.numeral_range = 4;
  config.batch_size = 16;

  DMPair dm({1, 2}, {3}, 4);
  Lexicon lexicon = minimal_lexicon(dm);
  NeedDistribution dist(4);

  SpeakerPolicy speaker(config, seed * 2 + 1);
  ListenerPolicy listener(config, seed * 2 + 2);
  speaker.register_tokens(Vocabulary(dm));

  // A batch with both successes and failures, so the advantage term is live.
  std::mt19937_64 rng(seed);
  EpisodeBatch batch;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    batch = play_batch(speaker, listener, lexicon, dist, rng);
    double total =
        std::accumulate(batch.rewards.begin(), batch.rewards.end(), 0.0);
    if (total > 0.0 && total < static_cast<double>(batch.rewards.size())) {
      break;
    }
  }

  Gradients analytic = reinforce_gradients(speaker, listener, batch);
  std::vector<double> fd_speaker = fd_gradient(
      speaker, [&] { return speaker_surrogate_loss(speaker, batch); },
      fd_step);
  std::vector<double> fd_listener = fd_gradient(
      listener, [&] { return listener_surrogate_loss(listener, batch); },
      fd_step);

  GradCheckResult result;
  result.speaker_rel_error = rel_error(analytic.speaker, fd_speaker);
  result.listener_rel_error = rel_error(analytic.listener, fd_listener);
  return result;
}

}  // namespace recnum
