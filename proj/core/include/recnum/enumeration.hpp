// enumeration.hpp — exhaustive bounded-complexity language construction.
// Enumerates every derivable value level by level (all digits, then all
// 3-symbol expressions, and so on) and keeps the first expression found per
// value.  Exists to validate minimal_lexicon; deliberately shares no code
// with the fixpoint search.

#ifndef RECNUM_ENUMERATION_HPP
#define RECNUM_ENUMERATION_HPP

#include "recnum/lexicon.hpp"

namespace recnum {

// Throws CoverageError if some numeral in [1, n_max] has no expression of at
// most max_complexity symbols.
Lexicon enumerate_minimal_lexicon(const DMPair& dm, int max_complexity,
                                  SearchBounds bounds = {});

// Same search without the completeness requirement: entry [v] is a cheapest
// expression for v, or null when v has none within the bound.  Index 0 is
// unused.
std::vector<ExprPtr> enumerate_expressions(const DMPair& dm,
                                           int max_complexity,
                                           SearchBounds bounds = {});

}  // namespace recnum

#endif  // RECNUM_ENUMERATION_HPP
