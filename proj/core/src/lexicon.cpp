#include "recnum/lexicon.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace recnum {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Bounds {
  int n_max;
  int cap;
};

Bounds resolve(const DMPair& dm, SearchBounds b) {
  int n_max = b.n_max > 0 ? b.n_max : dm.range_max();
  int cap = b.value_cap > 0 ? b.value_cap : 2 * n_max;
  cap = std::max(cap, n_max);
  return {n_max, cap};
}

// Minimal symbol counts per value, for three roles: expressible as a digit or
// product chain (usable as a phrase multiplicand), as a phrase, and as a full
// Num.  The grammar is mutually recursive and subtraction lets rests exceed
// the value being built, so a plain increasing-order DP is not enough; we
// relax to a fixpoint, which terminates because costs are positive integers
// that only ever decrease.
struct CostTables {
  std::vector<int> mult;    // digit-or-product-chain cost, index = value
  std::vector<int> phrase;  // phrase cost
  std::vector<int> num;     // full Num cost
};

CostTables compute_costs(const DMPair& dm, const Bounds& b) {
  const int cap = b.cap;
  CostTables t;
  t.mult.assign(cap + 1, kInf);
  t.phrase.assign(cap + 1, kInf);
  t.num.assign(cap + 1, kInf);

  for (int d : dm.digits()) {
    if (d <= cap) {
      t.mult[d] = 1;
      t.num[d] = 1;
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;

    // Phrase = multiplicand * m.
    for (int m : dm.multipliers()) {
      if (m < 1) continue;
      for (int q = 1; static_cast<long long>(q) * m <= cap; ++q) {
        if (t.mult[q] >= kInf) continue;
        int v = q * m;
        int c = t.mult[q] + 2;
        if (c < t.phrase[v]) {
          t.phrase[v] = c;
          changed = true;
        }
      }
    }
    for (int v = 1; v <= cap; ++v) {
      if (t.phrase[v] < t.mult[v]) {
        t.mult[v] = t.phrase[v];
        changed = true;
      }
      if (t.phrase[v] < t.num[v]) {
        t.num[v] = t.phrase[v];
        changed = true;
      }
    }

    // Sum / Diff with a phrase on the left and any Num as rest.
    for (int p = 1; p <= cap; ++p) {
      if (t.phrase[p] >= kInf) continue;
      int base = t.phrase[p] + 1;
      for (int r = 1; r <= cap; ++r) {
        if (t.num[r] >= kInf) continue;
        int c = base + t.num[r];
        int vs = p + r;
        if (vs <= cap && c < t.num[vs]) {
          t.num[vs] = c;
          changed = true;
        }
        int vd = p - r;
        if (vd >= 1 && c < t.num[vd]) {
          t.num[vd] = c;
          changed = true;
        }
      }
    }
  }
  return t;
}

std::vector<int> missing_in_range(const CostTables& t, int n_max) {
  std::vector<int> missing;
  for (int n = 1; n <= n_max; ++n) {
    if (t.num[n] >= kInf) missing.push_back(n);
  }
  return missing;
}

int kind_rank(NumExpr::Kind k) {
  switch (k) {
    case NumExpr::Kind::Digit:
      return 0;
    case NumExpr::Kind::Phrase:
      return 1;
    case NumExpr::Kind::Sum:
      return 2;
    case NumExpr::Kind::Diff:
      return 3;
  }
  return 4;
}

// Deterministic preference among equal-value expressions: lower complexity,
// then digit < phrase < sum < diff, larger outer multiplier, smaller rest
// value, and finally the rendered string.
bool better(const ExprPtr& a, const ExprPtr& b) {
  if (!b) return static_cast<bool>(a);
  if (!a) return false;
  if (a->complexity() != b->complexity()) {
    return a->complexity() < b->complexity();
  }
  int ra = kind_rank(a->kind());
  int rb = kind_rank(b->kind());
  if (ra != rb) return ra < rb;
  if (a->kind() != NumExpr::Kind::Digit) {
    if (a->outer_multiplier() != b->outer_multiplier()) {
      return a->outer_multiplier() > b->outer_multiplier();
    }
  }
  if (a->kind() == NumExpr::Kind::Sum || a->kind() == NumExpr::Kind::Diff) {
    if (a->rest()->value() != b->rest()->value()) {
      return a->rest()->value() < b->rest()->value();
    }
  }
  return render(*a) < render(*b);
}

// Builds the canonical expression per value once optimal costs are known.
// Candidates are assembled from canonical subexpressions, so a second small
// fixpoint settles the tie-breaks; every slot only ever improves in the
// `better` order, which is total, so this terminates.
struct ExprTables {
  std::vector<ExprPtr> mult;
  std::vector<ExprPtr> phrase;
  std::vector<ExprPtr> num;
};

ExprTables build_expressions(const DMPair& dm, const CostTables& cost,
                             const Bounds& b) {
  const int cap = b.cap;
  ExprTables e;
  e.mult.resize(cap + 1);
  e.phrase.resize(cap + 1);
  e.num.resize(cap + 1);

  for (int d : dm.digits()) {
    if (d <= cap) {
      ExprPtr leaf = NumExpr::digit(d);
      e.mult[d] = leaf;
      e.num[d] = leaf;
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;

    for (int v = 1; v <= cap; ++v) {
      if (cost.phrase[v] >= kInf) continue;
      // Larger multipliers first so the first optimal hit already satisfies
      // the multiplier tie-break (v and m determine the multiplicand).
      for (auto it = dm.multipliers().rbegin(); it != dm.multipliers().rend();
           ++it) {
        int m = *it;
        if (v % m != 0) continue;
        int q = v / m;
        if (q > cap || !e.mult[q]) continue;
        if (cost.mult[q] + 2 != cost.phrase[v]) continue;
        ExprPtr cand = NumExpr::phrase(e.mult[q], m);
        if (better(cand, e.phrase[v])) {
          e.phrase[v] = cand;
          changed = true;
        }
        break;
      }
      if (!dm.has_digit(v) && e.phrase[v] &&
          cost.phrase[v] == cost.mult[v] && better(e.phrase[v], e.mult[v])) {
        e.mult[v] = e.phrase[v];
        changed = true;
      }
    }

    for (int v = 1; v <= cap; ++v) {
      if (cost.num[v] >= kInf) continue;
      ExprPtr best = e.num[v];
      if (e.phrase[v] && cost.phrase[v] == cost.num[v]) {
        if (better(e.phrase[v], best)) best = e.phrase[v];
      }
      for (int p = 1; p <= cap; ++p) {
        if (cost.phrase[p] >= kInf || !e.phrase[p]) continue;
        int base = cost.phrase[p] + 1;
        int rs = v - p;
        if (rs >= 1 && cost.num[rs] < kInf && e.num[rs] &&
            base + cost.num[rs] == cost.num[v]) {
          ExprPtr cand = NumExpr::sum(e.phrase[p], e.num[rs]);
          if (better(cand, best)) best = cand;
        }
        int rd = p - v;
        if (rd >= 1 && rd <= cap && cost.num[rd] < kInf && e.num[rd] &&
            base + cost.num[rd] == cost.num[v]) {
          ExprPtr cand = NumExpr::diff(e.phrase[p], e.num[rd]);
          if (better(cand, best)) best = cand;
        }
      }
      if (best != e.num[v]) {
        e.num[v] = best;
        changed = true;
      }
    }
  }
  return e;
}

}  // namespace

CoverageError::CoverageError(std::vector<int> missing)
    : std::runtime_error([&missing] {
        std::ostringstream os;
        os << "grammar cannot express " << missing.size() << " numeral(s):";
        int shown = 0;
        for (int n : missing) {
          if (shown++ == 12) {
            os << " ...";
            break;
          }
          os << ' ' << n;
        }
        return os.str();
      }()),
      missing_(std::move(missing)) {}

Lexicon::Lexicon(DMPair dm, std::vector<ExprPtr> entries)
    : dm_(std::move(dm)), entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("lexicon must cover at least numeral 1");
  }
  for (size_t i = 0; i < entries_.size(); ++i) {
    const ExprPtr& e = entries_[i];
    if (!e) {
      throw std::invalid_argument("lexicon entry missing for numeral " +
                                  std::to_string(i + 1));
    }
    if (e->value() != static_cast<int>(i + 1)) {
      throw std::invalid_argument("lexicon entry for numeral " +
                                  std::to_string(i + 1) + " denotes " +
                                  std::to_string(e->value()));
    }
    if (!uses_only(*e, dm_)) {
      throw std::invalid_argument("lexicon entry for numeral " +
                                  std::to_string(i + 1) +
                                  " uses symbols outside the grammar");
    }
  }
}

std::vector<int> minimal_complexities(const DMPair& dm, SearchBounds bounds) {
  Bounds b = resolve(dm, bounds);
  CostTables t = compute_costs(dm, b);
  std::vector<int> missing = missing_in_range(t, b.n_max);
  if (!missing.empty()) {
    throw CoverageError(std::move(missing));
  }
  return std::vector<int>(t.num.begin() + 1, t.num.begin() + b.n_max + 1);
}

std::vector<int> uncovered_numerals(const DMPair& dm, SearchBounds bounds) {
  Bounds b = resolve(dm, bounds);
  return missing_in_range(compute_costs(dm, b), b.n_max);
}

bool covers(const DMPair& dm, SearchBounds bounds) {
  return uncovered_numerals(dm, bounds).empty();
}

Lexicon minimal_lexicon(const DMPair& dm, SearchBounds bounds) {
  Bounds b = resolve(dm, bounds);
  CostTables cost = compute_costs(dm, b);
  std::vector<int> missing = missing_in_range(cost, b.n_max);
  if (!missing.empty()) {
    throw CoverageError(std::move(missing));
  }
  ExprTables exprs = build_expressions(dm, cost, b);
  std::vector<ExprPtr> entries(exprs.num.begin() + 1,
                               exprs.num.begin() + b.n_max + 1);
  return Lexicon(dm, std::move(entries));
}

}  // namespace recnum
