// metrics.hpp — the need distribution over numerals and the two efficiency
// objectives: average morphosyntactic complexity and lexicon size.

#ifndef RECNUM_METRICS_HPP
#define RECNUM_METRICS_HPP

#include <random>
#include <vector>

#include "recnum/lexicon.hpp"

namespace recnum {

// P(n) proportional to n^-exponent on [1, n_max]; smaller numbers are needed
// more often.  Weights are normalized and strictly decreasing.
class NeedDistribution {
 public:
  explicit NeedDistribution(int n_max = 99, double exponent = 2.0);

  int n_max() const { return n_max_; }
  double exponent() const { return exponent_; }
  double probability(int n) const;  // throws std::out_of_range off support
  const std::vector<double>& weights() const { return weights_; }

  // Same power law renormalized on [1, new_n_max].
  NeedDistribution restricted(int new_n_max) const;

  // One draw by inverse-CDF; deterministic given the engine state.
  int sample(std::mt19937_64& rng) const;

 private:
  int n_max_;
  double exponent_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

// Expected symbol count of lex under dist.  The lexicon must cover the whole
// support; restrict the distribution first if it does not.
double avg_ms_complexity(const Lexicon& lex, const NeedDistribution& dist);

// Same objective straight from a grammar: the minimum over all concrete
// languages, realized per numeral.  Throws CoverageError when the grammar
// cannot express part of the support.
double avg_ms_complexity(const DMPair& dm, const NeedDistribution& dist);

// |D| + |M|, the simplicity axis of the tradeoff.
int lexicon_size(const DMPair& dm);

}  // namespace recnum

#endif  // RECNUM_METRICS_HPP
