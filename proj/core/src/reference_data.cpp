#include "recnum/reference_data.hpp"

namespace recnum {

const std::vector<NamedGrammar>& human_language_grammars() {
  static const std::vector<NamedGrammar> grammars = {
      {"english", {1, 2, 3, 4, 5, 6, 7, 8, 9, 11}, {10}},
      {"french", {1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 20}},
      {"kunama", {1, 2, 3, 4}, {5, 10}},
  };
  return grammars;
}

const std::vector<NamedGrammar>& evolution_start_grammars() {
  static const std::vector<NamedGrammar> grammars = {
      {"start_1", {1, 2, 3, 20, 35, 37, 40, 47, 49}, {4, 25, 45}},
      {"start_2", {1, 4, 7, 8, 15}, {10, 33}},
      {"start_3", {1, 20, 25, 28, 31, 39, 41, 45}, {2, 3, 4, 15}},
      {"start_4",
       {1, 4, 19, 21, 39, 40, 45, 47, 49},
       {3, 5, 8, 10, 18, 23, 28, 30, 37, 42, 43, 48}},
      {"start_5",
       {1, 2, 3, 4, 5, 10, 20, 30, 35, 40, 47, 49},
       {6, 11, 13, 15, 45, 50}},
      {"start_6", {1, 2, 35, 37, 40, 47, 49}, {3, 5, 10, 20, 30, 40}},
      {"start_7", {1, 4, 12}, {9, 25}},
      {"start_8", {1, 4, 17, 22, 49}, {9, 10, 25, 28, 31, 41, 45}},
  };
  return grammars;
}

const std::vector<NamedGrammar>& size12_reference_grammars() {
  static const std::vector<NamedGrammar> grammars = {
      {"product_grammar_12", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, {12}},
      {"hurford_grammar_12", {1, 2, 3, 5, 6, 9, 10, 11, 14}, {4, 7, 25}},
      {"mixtec_a_12", {1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 15, 20}},
  };
  return grammars;
}

DMPair to_dmpair(const NamedGrammar& g, int range_max) {
  // Some attested starting grammars list a numeral in both roles; the digit
  // reading wins and the duplicate multiplier is dropped.
  std::vector<int> multipliers;
  for (int m : g.multipliers) {
    bool is_digit = false;
    for (int d : g.digits) is_digit = is_digit || d == m;
    if (!is_digit) multipliers.push_back(m);
  }
  return DMPair(g.digits, std::move(multipliers), range_max);
}

}  // namespace recnum
