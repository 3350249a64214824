#include "recnum/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "recnum/lexicon.hpp"
#include "recnum/mutation.hpp"

namespace recnum {

namespace {

constexpr double kTol = 1e-12;

bool real_lt(double a, double b) { return a < b - kTol; }
bool real_le(double a, double b) { return a <= b + kTol; }

// Deterministic total order used for sorting and deduplication.
bool candidate_order(const Candidate& a, const Candidate& b) {
  if (a.lexicon_size != b.lexicon_size) return a.lexicon_size < b.lexicon_size;
  if (a.avg_complexity != b.avg_complexity)
    return a.avg_complexity < b.avg_complexity;
  if (a.dm.digits() != b.dm.digits()) return a.dm.digits() < b.dm.digits();
  return a.dm.multipliers() < b.dm.multipliers();
}

using DMKey = std::pair<std::vector<int>, std::vector<int>>;

DMKey key_of(const DMPair& dm) { return {dm.digits(), dm.multipliers()}; }

class Evaluator {
 public:
  Evaluator(int support_max) : dist_(support_max) {}

  // nullopt when the grammar cannot express the whole support.
  std::optional<Candidate> evaluate(const DMPair& dm) {
    DMKey key = key_of(dm);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::optional<double> avg;
      try {
        avg = avg_ms_complexity(dm, dist_);
      } catch (const CoverageError&) {
        avg = std::nullopt;
      }
      it = cache_.emplace(std::move(key), avg).first;
    }
    if (!it->second) return std::nullopt;
    return Candidate{dm, lexicon_size(dm), *it->second};
  }

 private:
  NeedDistribution dist_;
  std::map<DMKey, std::optional<double>> cache_;
};

// Offspring edits.  The six conservative grammar actions used by the
// evolution loop always touch the extremes of the range (add the highest
// absent numeral, drop the highest member), which makes dense low-numeral
// digit sets unreachable from a random population: a small numeral can never
// enter a lineage that did not start with it.  The frontier search therefore
// uses position-free versions of the same six edit shapes: add a random
// absent numeral to D or M, promote/demote a random member, drop a random
// member.  Still mutation-only.
std::optional<DMPair> random_edit(const DMPair& dm, std::mt19937_64& rng) {
  std::vector<int> digits = dm.digits();
  std::vector<int> multipliers = dm.multipliers();

  auto pick = [&rng](size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  };
  auto random_absent = [&]() -> int {
    std::vector<int> absent;
    absent.reserve(dm.range_max());
    for (int v = 1; v <= dm.range_max(); ++v) {
      if (!dm.has_digit(v) && !dm.has_multiplier(v)) absent.push_back(v);
    }
    if (absent.empty()) return 0;
    return absent[pick(absent.size())];
  };

  switch (pick(6)) {
    case 0: {  // add random absent numeral to D
      int v = random_absent();
      if (v == 0) return std::nullopt;
      digits.push_back(v);
      break;
    }
    case 1: {  // add random absent numeral to M
      int v = random_absent();
      if (v == 0) return std::nullopt;
      multipliers.push_back(v);
      break;
    }
    case 2: {  // move random multiplier to D
      if (multipliers.empty()) return std::nullopt;
      size_t i = pick(multipliers.size());
      digits.push_back(multipliers[i]);
      multipliers.erase(multipliers.begin() + i);
      break;
    }
    case 3: {  // move random digit to M
      if (digits.size() < 2) return std::nullopt;
      size_t i = pick(digits.size());
      multipliers.push_back(digits[i]);
      digits.erase(digits.begin() + i);
      break;
    }
    case 4: {  // drop random digit
      if (digits.size() < 2) return std::nullopt;
      digits.erase(digits.begin() + pick(digits.size()));
      break;
    }
    case 5: {  // drop random multiplier
      if (multipliers.empty()) return std::nullopt;
      multipliers.erase(multipliers.begin() + pick(multipliers.size()));
      break;
    }
  }
  return DMPair(std::move(digits), std::move(multipliers), dm.range_max());
}

DMPair sample_initial(const GaConfig& cfg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d_size(1, cfg.max_digits_init);
  std::uniform_int_distribution<int> m_size(0, cfg.max_multipliers_init);
  std::vector<int> values(cfg.range_max);
  for (int i = 0; i < cfg.range_max; ++i) values[i] = i + 1;
  for (;;) {
    int nd = d_size(rng);
    int nm = m_size(rng);
    // Partial Fisher-Yates: the first nd+nm slots become a uniform draw
    // without replacement, split between D and M.
    for (int i = 0; i < nd + nm && i < cfg.range_max; ++i) {
      std::uniform_int_distribution<int> pick(i, cfg.range_max - 1);
      std::swap(values[i], values[pick(rng)]);
    }
    if (nd + nm > cfg.range_max) continue;
    std::vector<int> digits(values.begin(), values.begin() + nd);
    std::vector<int> multipliers(values.begin() + nd,
                                 values.begin() + nd + nm);
    DMPair dm(std::move(digits), std::move(multipliers), cfg.range_max);
    if (covers(dm, SearchBounds{cfg.support_max, 0})) return dm;
  }
}

// Crowding distance on the two (range-normalized) objectives; boundary
// points get infinity so the extremes always survive truncation.
std::vector<double> crowding(const std::vector<Candidate>& front) {
  size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<double>::infinity());
    return dist;
  }
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;

  auto add_axis = [&](auto getter) {
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return getter(front[a]) < getter(front[b]);
    });
    double lo = getter(front[idx.front()]);
    double hi = getter(front[idx.back()]);
    double span = hi - lo;
    dist[idx.front()] = std::numeric_limits<double>::infinity();
    dist[idx.back()] = std::numeric_limits<double>::infinity();
    if (span <= 0.0) return;
    for (size_t i = 1; i + 1 < n; ++i) {
      dist[idx[i]] +=
          (getter(front[idx[i + 1]]) - getter(front[idx[i - 1]])) / span;
    }
  };
  add_axis([](const Candidate& c) { return static_cast<double>(c.lexicon_size); });
  add_axis([](const Candidate& c) { return c.avg_complexity; });
  return dist;
}

// Elitist environmental selection: peel nondominated layers; a partial last
// layer is truncated by crowding distance.
std::vector<Candidate> select_population(std::vector<Candidate> merged,
                                         int target) {
  std::sort(merged.begin(), merged.end(), candidate_order);
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](const Candidate& a, const Candidate& b) {
                             return a.dm == b.dm;
                           }),
               merged.end());

  std::vector<Candidate> next;
  while (!merged.empty() && static_cast<int>(next.size()) < target) {
    // Current layer: everything not dominated within the remaining pool.
    // Objective-duplicates of a layer member count as layer members too, so
    // the pool always shrinks.
    std::vector<Candidate> front;
    std::vector<Candidate> remaining;
    for (const Candidate& c : merged) {
      bool dominated = false;
      for (const Candidate& other : merged) {
        if (dominates(other, c)) {
          dominated = true;
          break;
        }
      }
      (dominated ? remaining : front).push_back(c);
    }

    if (static_cast<int>(next.size() + front.size()) <= target) {
      next.insert(next.end(), front.begin(), front.end());
    } else {
      std::vector<double> cd = crowding(front);
      std::vector<size_t> idx(front.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        if (cd[a] != cd[b]) return cd[a] > cd[b];
        return candidate_order(front[a], front[b]);
      });
      size_t need = target - next.size();
      std::vector<size_t> keep(idx.begin(), idx.begin() + need);
      std::sort(keep.begin(), keep.end());
      for (size_t i : keep) next.push_back(front[i]);
    }
    merged = std::move(remaining);
  }
  return next;
}

}  // namespace

bool dominates(const Candidate& a, const Candidate& b) {
  bool le_size = a.lexicon_size <= b.lexicon_size;
  bool le_avg = real_le(a.avg_complexity, b.avg_complexity);
  if (!le_size || !le_avg) return false;
  return a.lexicon_size < b.lexicon_size ||
         real_lt(a.avg_complexity, b.avg_complexity);
}

std::vector<Candidate> nondominated(std::vector<Candidate> pop) {
  std::sort(pop.begin(), pop.end(), candidate_order);
  std::vector<Candidate> out;
  for (const Candidate& c : pop) {
    bool keep = true;
    for (const Candidate& other : pop) {
      if (dominates(other, c)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    // Deduplicate by objectives: pop is sorted, so equal objectives are
    // adjacent and the first representative wins.
    if (!out.empty() && out.back().lexicon_size == c.lexicon_size &&
        std::abs(out.back().avg_complexity - c.avg_complexity) <= kTol) {
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Frontier run_ga(const GaConfig& config, std::mt19937_64& rng) {
  Evaluator evaluator(config.support_max);

  std::vector<Candidate> population;
  population.reserve(config.population_size);
  while (static_cast<int>(population.size()) < config.population_size) {
    DMPair dm = sample_initial(config, rng);
    if (auto c = evaluator.evaluate(dm)) population.push_back(std::move(*c));
  }

  for (int gen = 0; gen < config.generations; ++gen) {
    std::vector<Candidate> parents = nondominated(population);
    std::uniform_int_distribution<size_t> pick_parent(0, parents.size() - 1);
    std::uniform_int_distribution<int> pick_count(
        1, config.max_mutations_per_offspring);

    std::vector<Candidate> offspring;
    offspring.reserve(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
      DMPair child = parents[pick_parent(rng)].dm;
      int steps = pick_count(rng);
      for (int s = 0; s < steps; ++s) {
        if (auto next = random_edit(child, rng)) {
          child = std::move(*next);
        }
      }
      if (auto c = evaluator.evaluate(child)) {
        offspring.push_back(std::move(*c));  // non-covering children dropped
      }
    }

    std::vector<Candidate> merged = std::move(population);
    merged.insert(merged.end(), offspring.begin(), offspring.end());
    population = select_population(std::move(merged), config.population_size);
  }

  Frontier frontier;
  frontier.points = nondominated(std::move(population));
  frontier.config = config;
  return frontier;
}

double distance_to_frontier(double lexicon_size, double avg_complexity,
                            const Frontier& f) {
  if (f.points.empty()) {
    throw std::invalid_argument("frontier is empty");
  }
  double min_x = lexicon_size, max_x = lexicon_size;
  double min_y = avg_complexity, max_y = avg_complexity;
  for (const Candidate& p : f.points) {
    min_x = std::min(min_x, static_cast<double>(p.lexicon_size));
    max_x = std::max(max_x, static_cast<double>(p.lexicon_size));
    min_y = std::min(min_y, p.avg_complexity);
    max_y = std::max(max_y, p.avg_complexity);
  }
  double span_x = max_x - min_x;
  double span_y = max_y - min_y;
  auto norm_x = [&](double x) { return span_x > 0 ? (x - min_x) / span_x : 0.0; };
  auto norm_y = [&](double y) { return span_y > 0 ? (y - min_y) / span_y : 0.0; };

  double cx = norm_x(lexicon_size);
  double cy = norm_y(avg_complexity);

  auto point_dist = [&](double px, double py) {
    return std::hypot(cx - px, cy - py);
  };

  double best = point_dist(norm_x(f.points.front().lexicon_size),
                           norm_y(f.points.front().avg_complexity));
  for (size_t i = 0; i + 1 < f.points.size(); ++i) {
    double ax = norm_x(f.points[i].lexicon_size);
    double ay = norm_y(f.points[i].avg_complexity);
    double bx = norm_x(f.points[i + 1].lexicon_size);
    double by = norm_y(f.points[i + 1].avg_complexity);
    double dx = bx - ax, dy = by - ay;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((cx - ax) * dx + (cy - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, point_dist(ax + t * dx, ay + t * dy));
  }
  return best;
}

double distance_to_frontier(const Candidate& c, const Frontier& f) {
  return distance_to_frontier(static_cast<double>(c.lexicon_size),
                              c.avg_complexity, f);
}

}  // namespace recnum
