#include "recnum/mutation.hpp"

#include <algorithm>

#include "recnum/lexicon.hpp"

namespace recnum {

namespace {

// Highest value in [1, range_max] that is in neither set, or 0 if the range
// is exhausted.
int highest_absent(const DMPair& dm) {
  for (int n = dm.range_max(); n >= 1; --n) {
    if (!dm.has_digit(n) && !dm.has_multiplier(n)) return n;
  }
  return 0;
}

std::optional<DMPair> make_pair(std::vector<int> digits,
                                std::vector<int> multipliers, int range_max) {
  if (digits.empty()) return std::nullopt;
  return DMPair(std::move(digits), std::move(multipliers), range_max);
}

}  // namespace

std::string_view mutation_name(MutationKind kind) {
  switch (kind) {
    case MutationKind::AddDigit:
      return "add_digit";
    case MutationKind::AddMultiplier:
      return "add_multiplier";
    case MutationKind::PromoteMultiplier:
      return "promote_multiplier";
    case MutationKind::DemoteDigit:
      return "demote_digit";
    case MutationKind::DropDigit:
      return "drop_digit";
    case MutationKind::DropMultiplier:
      return "drop_multiplier";
  }
  return "unknown";
}

std::optional<MutationKind> mutation_from_name(std::string_view name) {
  for (MutationKind kind : kAllMutations) {
    if (mutation_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<DMPair> apply_mutation(const DMPair& dm, MutationKind kind) {
  std::vector<int> digits = dm.digits();
  std::vector<int> multipliers = dm.multipliers();
  switch (kind) {
    case MutationKind::AddDigit: {
      int n = highest_absent(dm);
      if (n == 0) return std::nullopt;
      digits.push_back(n);
      break;
    }
    case MutationKind::AddMultiplier: {
      int n = highest_absent(dm);
      if (n == 0) return std::nullopt;
      multipliers.push_back(n);
      break;
    }
    case MutationKind::PromoteMultiplier: {
      if (multipliers.empty()) return std::nullopt;
      digits.push_back(multipliers.front());
      multipliers.erase(multipliers.begin());
      break;
    }
    case MutationKind::DemoteDigit: {
      if (digits.empty()) return std::nullopt;
      multipliers.push_back(digits.back());
      digits.pop_back();
      break;
    }
    case MutationKind::DropDigit: {
      if (digits.empty()) return std::nullopt;
      digits.pop_back();
      break;
    }
    case MutationKind::DropMultiplier: {
      if (multipliers.empty()) return std::nullopt;
      multipliers.pop_back();
      break;
    }
  }
  return make_pair(std::move(digits), std::move(multipliers), dm.range_max());
}

std::vector<Neighbor> valid_neighbors(const DMPair& dm) {
  std::vector<Neighbor> out;
  for (MutationKind kind : kAllMutations) {
    std::optional<DMPair> next = apply_mutation(dm, kind);
    if (next && covers(*next)) {
      out.push_back(Neighbor{kind, std::move(*next)});
    }
  }
  return out;
}

Neighbor sample_alternative(const DMPair& dm, std::mt19937_64& rng) {
  return sample_alternative(valid_neighbors(dm), rng);
}

Neighbor sample_alternative(const std::vector<Neighbor>& neighbors,
                            std::mt19937_64& rng) {
  if (neighbors.empty()) {
    throw NoValidNeighbor();
  }
  std::uniform_int_distribution<size_t> pick(0, neighbors.size() - 1);
  return neighbors[pick(rng)];
}

}  // namespace recnum
