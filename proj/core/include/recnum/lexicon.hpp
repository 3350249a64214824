// lexicon.hpp — minimal-complexity concrete languages for a (D, M) pair and
// the coverage predicate used when filtering grammar mutations.

#ifndef RECNUM_LEXICON_HPP
#define RECNUM_LEXICON_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "recnum/grammar.hpp"

namespace recnum {

// Raised when some numerals in the requested range have no expression.
class CoverageError : public std::runtime_error {
 public:
  explicit CoverageError(std::vector<int> missing);
  const std::vector<int>& missing() const { return missing_; }

 private:
  std::vector<int> missing_;
};

// A concrete language: one expression per numeral in [1, n_max].  Complete by
// construction and consistent with its grammar.
class Lexicon {
 public:
  Lexicon(DMPair dm, std::vector<ExprPtr> entries);  // entries[i] denotes i+1

  const DMPair& dm() const { return dm_; }
  int n_max() const { return static_cast<int>(entries_.size()); }
  const NumExpr& entry(int n) const { return *entries_.at(n - 1); }
  const ExprPtr& entry_ptr(int n) const { return entries_.at(n - 1); }
  int complexity(int n) const { return entries_.at(n - 1)->complexity(); }

 private:
  DMPair dm_;
  std::vector<ExprPtr> entries_;
};

// Search bounds. n_max <= 0 means "the grammar's own range"; value_cap <= 0
// means twice n_max (subtraction may route through values above the range,
// e.g. 99 = 10*10 - 1, so intermediates up to the cap are allowed).
struct SearchBounds {
  int n_max = 0;
  int value_cap = 0;
};

// Minimal symbol count for every numeral in [1, n_max], or CoverageError.
std::vector<int> minimal_complexities(const DMPair& dm,
                                      SearchBounds bounds = {});

// The numerals in [1, n_max] with no expression (empty iff covers()).
std::vector<int> uncovered_numerals(const DMPair& dm, SearchBounds bounds = {});

// True iff every numeral in [1, n_max] has at least one expression.
bool covers(const DMPair& dm, SearchBounds bounds = {});

// The minimal-average-complexity language: for each numeral the cheapest
// expression, ties broken deterministically (digit first, then phrase, then
// sum before diff, larger outer multiplier, smaller rest value, rendered
// string).
Lexicon minimal_lexicon(const DMPair& dm, SearchBounds bounds = {});

}  // namespace recnum

#endif  // RECNUM_LEXICON_HPP
