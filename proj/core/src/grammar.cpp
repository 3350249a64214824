#include "recnum/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace recnum {

namespace {

// Values a hostile parse input could build before we notice; keeps the
// cached int fields from overflowing.
constexpr long long kMaxExprValue = 1'000'000'000LL;

}  // namespace

DMPair::DMPair(std::vector<int> digits, std::vector<int> multipliers,
               int range_max)
    : digits_(std::move(digits)),
      multipliers_(std::move(multipliers)),
      range_max_(range_max) {
  if (range_max_ < 1) {
    throw std::invalid_argument("range_max must be >= 1");
  }
  auto normalize = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(digits_);
  normalize(multipliers_);
  if (digits_.empty()) {
    throw std::invalid_argument("digit set must be non-empty");
  }
  for (int d : digits_) {
    if (d < 1 || d > range_max_) {
      throw std::invalid_argument("digit " + std::to_string(d) +
                                  " outside [1, range_max]");
    }
  }
  for (int m : multipliers_) {
    if (m < 1 || m > range_max_) {
      throw std::invalid_argument("multiplier " + std::to_string(m) +
                                  " outside [1, range_max]");
    }
    if (has_digit(m)) {
      throw std::invalid_argument("digits and multipliers must be disjoint (" +
                                  std::to_string(m) + " is in both)");
    }
  }
}

bool DMPair::has_digit(int n) const {
  return std::binary_search(digits_.begin(), digits_.end(), n);
}

bool DMPair::has_multiplier(int n) const {
  return std::binary_search(multipliers_.begin(), multipliers_.end(), n);
}

ExprPtr NumExpr::digit(int value) {
  if (value < 1) {
    throw std::invalid_argument("digit value must be >= 1");
  }
  return ExprPtr(new NumExpr(Kind::Digit, value, 1, 0, nullptr, nullptr));
}

ExprPtr NumExpr::phrase(ExprPtr multiplicand, int multiplier) {
  if (!multiplicand) {
    throw std::invalid_argument("phrase multiplicand is null");
  }
  if (multiplicand->kind() != Kind::Digit &&
      multiplicand->kind() != Kind::Phrase) {
    throw std::invalid_argument(
        "phrase multiplicand must be a digit or another phrase");
  }
  if (multiplier < 1) {
    throw std::invalid_argument("multiplier must be >= 1");
  }
  long long v =
      static_cast<long long>(multiplicand->value()) * multiplier;
  if (v > kMaxExprValue) {
    throw std::invalid_argument("expression value out of range");
  }
  int complexity = multiplicand->complexity() + 2;
  return ExprPtr(new NumExpr(Kind::Phrase, static_cast<int>(v), complexity,
                             multiplier, std::move(multiplicand), nullptr));
}

ExprPtr NumExpr::sum(ExprPtr phrase, ExprPtr rest) {
  if (!phrase || !rest) {
    throw std::invalid_argument("sum operand is null");
  }
  if (phrase->kind() != Kind::Phrase) {
    throw std::invalid_argument("left operand of + must be a phrase");
  }
  long long v = static_cast<long long>(phrase->value()) + rest->value();
  if (v > kMaxExprValue) {
    throw std::invalid_argument("expression value out of range");
  }
  int complexity = phrase->complexity() + 1 + rest->complexity();
  int multiplier = phrase->outer_multiplier();
  return ExprPtr(new NumExpr(Kind::Sum, static_cast<int>(v), complexity,
                             multiplier, std::move(phrase), std::move(rest)));
}

ExprPtr NumExpr::diff(ExprPtr phrase, ExprPtr rest) {
  if (!phrase || !rest) {
    throw std::invalid_argument("diff operand is null");
  }
  if (phrase->kind() != Kind::Phrase) {
    throw std::invalid_argument("left operand of - must be a phrase");
  }
  long long v = static_cast<long long>(phrase->value()) - rest->value();
  if (v < 1) {
    throw std::invalid_argument("subtraction result must stay >= 1");
  }
  int complexity = phrase->complexity() + 1 + rest->complexity();
  int multiplier = phrase->outer_multiplier();
  return ExprPtr(new NumExpr(Kind::Diff, static_cast<int>(v), complexity,
                             multiplier, std::move(phrase), std::move(rest)));
}

int NumExpr::digit_value() const {
  if (kind_ != Kind::Digit) {
    throw std::logic_error("digit_value on non-digit node");
  }
  return value_;
}

int NumExpr::outer_multiplier() const {
  if (kind_ == Kind::Digit) {
    throw std::logic_error("outer_multiplier on a digit node");
  }
  return multiplier_;
}

const ExprPtr& NumExpr::left() const {
  if (kind_ == Kind::Digit) {
    throw std::logic_error("left() on a digit node");
  }
  return left_;
}

const ExprPtr& NumExpr::rest() const {
  if (kind_ != Kind::Sum && kind_ != Kind::Diff) {
    throw std::logic_error("rest() on a non-sum/diff node");
  }
  return rest_;
}

bool operator==(const NumExpr& a, const NumExpr& b) {
  if (a.kind_ != b.kind_ || a.value_ != b.value_ ||
      a.complexity_ != b.complexity_) {
    return false;
  }
  switch (a.kind_) {
    case NumExpr::Kind::Digit:
      return true;
    case NumExpr::Kind::Phrase:
      return a.multiplier_ == b.multiplier_ && *a.left_ == *b.left_;
    case NumExpr::Kind::Sum:
    case NumExpr::Kind::Diff:
      return *a.left_ == *b.left_ && *a.rest_ == *b.rest_;
  }
  return false;
}

int value(const NumExpr& expr) { return expr.value(); }

int ms_complexity(const NumExpr& expr) { return expr.complexity(); }

namespace {

void render_into(const NumExpr& e, std::string& out) {
  switch (e.kind()) {
    case NumExpr::Kind::Digit:
      out += std::to_string(e.value());
      break;
    case NumExpr::Kind::Phrase:
      render_into(*e.left(), out);
      out += '*';
      out += std::to_string(e.outer_multiplier());
      break;
    case NumExpr::Kind::Sum:
      render_into(*e.left(), out);
      out += '+';
      render_into(*e.rest(), out);
      break;
    case NumExpr::Kind::Diff:
      render_into(*e.left(), out);
      out += '-';
      render_into(*e.rest(), out);
      break;
  }
}

struct Tokenizer {
  std::string_view text;
  size_t pos = 0;

  // Returns either a numeral (>= 1) or one of '*', '+', '-' as a negative
  // sentinel; 0 means end of input.
  long long next() {
    if (pos >= text.size()) return 0;
    char c = text[pos];
    if (c == '*' || c == '+' || c == '-') {
      ++pos;
      return -static_cast<long long>(c);
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unknown token '") + c + "'");
    }
    long long v = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > kMaxExprValue) {
        throw ParseError("numeral literal out of range");
      }
      ++pos;
    }
    if (v == 0) {
      throw ParseError("numeral 0 is not a valid token");
    }
    return v;
  }
};

class Parser {
 public:
  Parser(std::string_view text, const DMPair& dm) : dm_(dm), tok_{text} {
    advance();
  }

  ExprPtr parse_all() {
    ExprPtr e = parse_num();
    if (current_ != 0) {
      throw ParseError("unexpected trailing input");
    }
    return e;
  }

 private:
  void advance() { current_ = tok_.next(); }

  bool at_op(char op) const { return current_ == -static_cast<long long>(op); }

  ExprPtr parse_num() {
    ExprPtr head = parse_product();
    if (at_op('+') || at_op('-')) {
      bool plus = at_op('+');
      if (head->kind() != NumExpr::Kind::Phrase) {
        throw ParseError(
            "left operand of '+'/'-' must be a multiplication phrase");
      }
      advance();
      ExprPtr rest = parse_num();
      try {
        return plus ? NumExpr::sum(head, rest) : NumExpr::diff(head, rest);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    return head;
  }

  ExprPtr parse_product() {
    int first = expect_numeral();
    if (!dm_.has_digit(first)) {
      throw ParseError("numeral " + std::to_string(first) +
                       " is not in the digit set");
    }
    ExprPtr e = NumExpr::digit(first);
    while (at_op('*')) {
      advance();
      int m = expect_numeral();
      if (!dm_.has_multiplier(m)) {
        throw ParseError("numeral " + std::to_string(m) +
                         " is not in the multiplier set");
      }
      e = NumExpr::phrase(e, m);
    }
    return e;
  }

  int expect_numeral() {
    if (current_ <= 0) {
      throw ParseError("expected a numeral");
    }
    int v = static_cast<int>(current_);
    advance();
    return v;
  }

  const DMPair& dm_;
  Tokenizer tok_;
  long long current_ = 0;
};

}  // namespace

std::string render(const NumExpr& expr) {
  std::string out;
  render_into(expr, out);
  return out;
}

ExprPtr parse(std::string_view text, const DMPair& dm) {
  if (text.empty()) {
    throw ParseError("empty input");
  }
  return Parser(text, dm).parse_all();
}

bool uses_only(const NumExpr& expr, const DMPair& dm) {
  switch (expr.kind()) {
    case NumExpr::Kind::Digit:
      return dm.has_digit(expr.value());
    case NumExpr::Kind::Phrase:
      return dm.has_multiplier(expr.outer_multiplier()) &&
             uses_only(*expr.left(), dm);
    case NumExpr::Kind::Sum:
    case NumExpr::Kind::Diff:
      return uses_only(*expr.left(), dm) && uses_only(*expr.rest(), dm);
  }
  return false;
}

}  // namespace recnum
