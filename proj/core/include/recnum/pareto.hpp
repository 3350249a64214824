// pareto.hpp — genetic estimation of the size/complexity Pareto frontier and
// the frontier-distance helper used to score evolution trajectories.

#ifndef RECNUM_PARETO_HPP
#define RECNUM_PARETO_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "recnum/grammar.hpp"
#include "recnum/metrics.hpp"

namespace recnum {

struct Candidate {
  DMPair dm;
  int lexicon_size;
  double avg_complexity;
};

// Strict Pareto dominance under minimization.  Real comparisons treat
// differences within 1e-12 as ties so dominance cannot flap on rounding.
bool dominates(const Candidate& a, const Candidate& b);

// Maximal nondominated subset, duplicates by objectives removed, sorted by
// ascending lexicon size (so avg complexity is strictly decreasing).
std::vector<Candidate> nondominated(std::vector<Candidate> pop);

struct GaConfig {
  int population_size = 400;
  int generations = 100;
  int max_mutations_per_offspring = 3;
  int range_max = 99;
  int support_max = 99;      // need-distribution support for the metric
  int max_digits_init = 12;  // initial |D| drawn from 1..max_digits_init
  int max_multipliers_init = 5;
};

struct Frontier {
  std::vector<Candidate> points;  // sorted by lexicon size
  GaConfig config;
  std::uint64_t seed = 0;
};

// Mutation-only elitist GA: evaluate, keep nondominated parents, mutate
// offspring 1..max times, drop anything that no longer covers the support,
// merge and truncate.  Deterministic for a fixed engine state.
Frontier run_ga(const GaConfig& config, std::mt19937_64& rng);

// Distance from a point to the piecewise-linear frontier, both axes min-max
// normalized over the frontier points plus the query; 0 on the frontier.
double distance_to_frontier(const Candidate& c, const Frontier& f);
double distance_to_frontier(double lexicon_size, double avg_complexity,
                            const Frontier& f);

}  // namespace recnum

#endif  // RECNUM_PARETO_HPP
