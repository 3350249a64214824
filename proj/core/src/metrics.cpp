#include "recnum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace recnum {

NeedDistribution::NeedDistribution(int n_max, double exponent)
    : n_max_(n_max), exponent_(exponent) {
  if (n_max_ < 1) {
    throw std::invalid_argument("need distribution support must be >= 1");
  }
  weights_.resize(n_max_);
  double total = 0.0;
  for (int n = 1; n <= n_max_; ++n) {
    weights_[n - 1] = std::pow(static_cast<double>(n), -exponent_);
    total += weights_[n - 1];
  }
  cumulative_.resize(n_max_);
  double acc = 0.0;
  for (int n = 1; n <= n_max_; ++n) {
    weights_[n - 1] /= total;
    acc += weights_[n - 1];
    cumulative_[n - 1] = acc;
  }
  cumulative_.back() = 1.0;
}

double NeedDistribution::probability(int n) const {
  if (n < 1 || n > n_max_) {
    throw std::out_of_range("numeral " + std::to_string(n) +
                            " outside need distribution support");
  }
  return weights_[n - 1];
}

NeedDistribution NeedDistribution::restricted(int new_n_max) const {
  return NeedDistribution(new_n_max, exponent_);
}

int NeedDistribution::sample(std::mt19937_64& rng) const {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<int>(it - cumulative_.begin()) + 1;
}

double avg_ms_complexity(const Lexicon& lex, const NeedDistribution& dist) {
  if (lex.n_max() < dist.n_max()) {
    throw std::invalid_argument(
        "lexicon covers [1, " + std::to_string(lex.n_max()) +
        "] but the need distribution is supported on [1, " +
        std::to_string(dist.n_max()) + "]");
  }
  double sum = 0.0;
  for (int n = 1; n <= dist.n_max(); ++n) {
    sum += dist.probability(n) * lex.complexity(n);
  }
  return sum;
}

double avg_ms_complexity(const DMPair& dm, const NeedDistribution& dist) {
  std::vector<int> costs =
      minimal_complexities(dm, SearchBounds{dist.n_max(), 0});
  double sum = 0.0;
  for (int n = 1; n <= dist.n_max(); ++n) {
    sum += dist.probability(n) * costs[n - 1];
  }
  return sum;
}

int lexicon_size(const DMPair& dm) {
  return static_cast<int>(dm.digits().size() + dm.multipliers().size());
}

}  // namespace recnum
