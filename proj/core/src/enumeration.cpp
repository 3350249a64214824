#include "recnum/enumeration.hpp"

#include <algorithm>

namespace recnum {

namespace {

// First expression found per value, bucketed by the complexity level at
// which the value first became derivable in a given role.
struct Role {
  std::vector<ExprPtr> expr;               // index = value
  std::vector<std::vector<int>> by_level;  // level -> values first seen there

  explicit Role(int cap, int levels) : expr(cap + 1), by_level(levels + 1) {}

  bool known(int v) const { return static_cast<bool>(expr[v]); }

  void found(int v, int level, ExprPtr e) {
    if (!expr[v]) {
      expr[v] = std::move(e);
      by_level[level].push_back(v);
    }
  }
};

}  // namespace

std::vector<ExprPtr> enumerate_expressions(const DMPair& dm,
                                           int max_complexity,
                                           SearchBounds bounds) {
  if (max_complexity < 1) {
    throw std::invalid_argument("max_complexity must be >= 1");
  }
  const int n_max = bounds.n_max > 0 ? bounds.n_max : dm.range_max();
  const int cap =
      std::max(bounds.value_cap > 0 ? bounds.value_cap : 2 * n_max, n_max);

  Role mult(cap, max_complexity);    // digits and product chains
  Role phrase(cap, max_complexity);  // product chains only
  Role num(cap, max_complexity);     // any expression

  for (int d : dm.digits()) {
    if (d <= cap) {
      ExprPtr leaf = NumExpr::digit(d);
      mult.found(d, 1, leaf);
      num.found(d, 1, leaf);
    }
  }

  for (int level = 2; level <= max_complexity; ++level) {
    // New phrases: multiplicand first derived exactly two symbols ago.
    if (level >= 3) {
      for (int q : mult.by_level[level - 2]) {
        for (int m : dm.multipliers()) {
          long long v = static_cast<long long>(q) * m;
          if (v > cap) continue;
          int vi = static_cast<int>(v);
          if (!phrase.known(vi)) {
            ExprPtr e = NumExpr::phrase(mult.expr[q], m);
            phrase.found(vi, level, e);
            mult.found(vi, level, e);
            num.found(vi, level, e);
          }
        }
      }
    }

    // New sums and differences: phrase at level lp, rest at level - 1 - lp.
    for (int lp = 3; lp <= level - 2; ++lp) {
      int lr = level - 1 - lp;
      for (int p : phrase.by_level[lp]) {
        for (int r : num.by_level[lr]) {
          int vs = p + r;
          if (vs <= cap && !num.known(vs)) {
            num.found(vs, level, NumExpr::sum(phrase.expr[p], num.expr[r]));
          }
          int vd = p - r;
          if (vd >= 1 && !num.known(vd)) {
            num.found(vd, level, NumExpr::diff(phrase.expr[p], num.expr[r]));
          }
        }
      }
    }
  }

  return std::move(num.expr);
}

Lexicon enumerate_minimal_lexicon(const DMPair& dm, int max_complexity,
                                  SearchBounds bounds) {
  const int n_max = bounds.n_max > 0 ? bounds.n_max : dm.range_max();
  std::vector<ExprPtr> exprs = enumerate_expressions(dm, max_complexity, bounds);

  std::vector<int> missing;
  for (int n = 1; n <= n_max; ++n) {
    if (!exprs[n]) missing.push_back(n);
  }
  if (!missing.empty()) {
    throw CoverageError(std::move(missing));
  }
  return Lexicon(dm, std::vector<ExprPtr>(exprs.begin() + 1,
                                          exprs.begin() + n_max + 1));
}

}  // namespace recnum
