// reference_data.hpp — embedded (D, M) reference grammars: three attested
// human systems, the eight starting grammars used by the evolution
// experiments, and three size-12 lexicons from different grammar traditions
// used for frontier comparisons.

#ifndef RECNUM_REFERENCE_DATA_HPP
#define RECNUM_REFERENCE_DATA_HPP

#include <string>
#include <vector>

#include "recnum/grammar.hpp"

namespace recnum {

struct NamedGrammar {
  std::string name;
  std::vector<int> digits;
  std::vector<int> multipliers;
};

// English, French, Kunama.
const std::vector<NamedGrammar>& human_language_grammars();

// Eight non-optimal starting grammars covering 1..50, indexed 1..8.
const std::vector<NamedGrammar>& evolution_start_grammars();

// Size-12 lexicons: the product-grammar optimum [1..11]/[12], a
// Hurford-grammar optimum, and the Mixtec (type 4-A) human system.
const std::vector<NamedGrammar>& size12_reference_grammars();

DMPair to_dmpair(const NamedGrammar& g, int range_max);

}  // namespace recnum

#endif  // RECNUM_REFERENCE_DATA_HPP
