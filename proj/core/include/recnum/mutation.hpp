// mutation.hpp — the six conservative grammar edits and validity filtering.
// Inapplicable edits are a signal (nullopt), not an error; a produced pair
// always satisfies the DMPair invariants.

#ifndef RECNUM_MUTATION_HPP
#define RECNUM_MUTATION_HPP

#include <array>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "recnum/grammar.hpp"

namespace recnum {

enum class MutationKind {
  AddDigit,            // add highest numeral absent from D and M to D
  AddMultiplier,       // add highest numeral absent from D and M to M
  PromoteMultiplier,   // move lowest numeral in M to D
  DemoteDigit,         // move highest numeral in D to M
  DropDigit,           // remove highest numeral in D
  DropMultiplier,      // remove highest numeral in M
};

inline constexpr std::array<MutationKind, 6> kAllMutations = {
    MutationKind::AddDigit,          MutationKind::AddMultiplier,
    MutationKind::PromoteMultiplier, MutationKind::DemoteDigit,
    MutationKind::DropDigit,         MutationKind::DropMultiplier,
};

std::string_view mutation_name(MutationKind kind);
std::optional<MutationKind> mutation_from_name(std::string_view name);

// Applies one edit.  "Highest absent numeral" is taken within
// [1, dm.range_max()].  nullopt when the referenced element does not exist or
// the result would break an invariant (e.g. dropping the only digit).
std::optional<DMPair> apply_mutation(const DMPair& dm, MutationKind kind);

struct Neighbor {
  MutationKind kind;
  DMPair dm;
};

// All applicable edits whose result still covers [1, range_max].
std::vector<Neighbor> valid_neighbors(const DMPair& dm);

struct NoValidNeighbor : std::runtime_error {
  NoValidNeighbor() : std::runtime_error("grammar has no valid neighbor") {}
};

// Uniform draw among valid neighbors; throws NoValidNeighbor if none.
Neighbor sample_alternative(const DMPair& dm, std::mt19937_64& rng);

// Draw from a pre-filtered list (same contract, list supplied by caller).
Neighbor sample_alternative(const std::vector<Neighbor>& neighbors,
                            std::mt19937_64& rng);

}  // namespace recnum

#endif  // RECNUM_MUTATION_HPP
