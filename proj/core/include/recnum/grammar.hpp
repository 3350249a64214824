// grammar.hpp — recursive numeral grammar: digit/multiplier pairs and
// expression trees of the form  Num = D | Phrase | Phrase + Num | Phrase - Num,
// Phrase = Num * M.  Expressions are immutable and cache their value and
// symbol count; all operations here are pure.

#ifndef RECNUM_GRAMMAR_HPP
#define RECNUM_GRAMMAR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace recnum {

using Numeral = int;  // always >= 1

// A grammar instance: the lexicalised digits D, the multipliers M and the
// numeral range the grammar is meant to cover.  D and M are kept sorted and
// disjoint; D is never empty.
class DMPair {
 public:
  DMPair(std::vector<int> digits, std::vector<int> multipliers, int range_max);

  const std::vector<int>& digits() const { return digits_; }
  const std::vector<int>& multipliers() const { return multipliers_; }
  int range_max() const { return range_max_; }

  bool has_digit(int n) const;
  bool has_multiplier(int n) const;

  friend bool operator==(const DMPair& a, const DMPair& b) {
    return a.digits_ == b.digits_ && a.multipliers_ == b.multipliers_ &&
           a.range_max_ == b.range_max_;
  }
  friend bool operator!=(const DMPair& a, const DMPair& b) { return !(a == b); }

 private:
  std::vector<int> digits_;
  std::vector<int> multipliers_;
  int range_max_;
};

class NumExpr;
using ExprPtr = std::shared_ptr<const NumExpr>;

// One node of an expression tree.  Construction enforces the grammar shape:
// the left operand of +/- is always a Phrase, a Phrase multiplicand is a
// digit or another Phrase (so the parenthesis-free text form stays
// unambiguous), and no subexpression may evaluate below 1.
class NumExpr {
 public:
  enum class Kind { Digit, Phrase, Sum, Diff };

  static ExprPtr digit(int value);
  static ExprPtr phrase(ExprPtr multiplicand, int multiplier);
  static ExprPtr sum(ExprPtr phrase, ExprPtr rest);
  static ExprPtr diff(ExprPtr phrase, ExprPtr rest);

  Kind kind() const { return kind_; }
  int value() const { return value_; }
  int complexity() const { return complexity_; }

  // Digit only.
  int digit_value() const;
  // Phrase: its own multiplier. Sum/Diff: the multiplier of the left phrase.
  int outer_multiplier() const;
  // Phrase multiplicand, or the left phrase of a Sum/Diff.
  const ExprPtr& left() const;
  // Sum/Diff right operand.
  const ExprPtr& rest() const;

  friend bool operator==(const NumExpr& a, const NumExpr& b);
  friend bool operator!=(const NumExpr& a, const NumExpr& b) { return !(a == b); }

 private:
  NumExpr(Kind kind, int value, int complexity, int multiplier, ExprPtr left,
          ExprPtr rest)
      : kind_(kind),
        value_(value),
        complexity_(complexity),
        multiplier_(multiplier),
        left_(std::move(left)),
        rest_(std::move(rest)) {}

  Kind kind_;
  int value_;
  int complexity_;
  int multiplier_;  // Phrase only
  ExprPtr left_;
  ExprPtr rest_;
};

// Integer denoted by the expression.
int value(const NumExpr& expr);

// Symbol count: a digit is 1 symbol, "q*m" adds 2 to q, "p+r"/"p-r" add 1
// to p and r together.
int ms_complexity(const NumExpr& expr);

// Canonical text form, e.g. "9*10+9".  No parentheses: products nest to the
// left, +/- rests nest to the right.
std::string render(const NumExpr& expr);

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse of render for expressions over the given grammar.  Checks that
// every numeral token is in D or M as its position requires.
ExprPtr parse(std::string_view text, const DMPair& dm);

// True iff every digit leaf is in dm.digits and every multiplier in
// dm.multipliers.
bool uses_only(const NumExpr& expr, const DMPair& dm);

}  // namespace recnum

#endif  // RECNUM_GRAMMAR_HPP
