#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "conicdual/extended.hpp"
#include "conicdual/lp/linear_system.hpp"

namespace conicdual::lp {

/// Exact Fourier-Motzkin elimination over systems mixing >=, > and =.
///
/// Equalities are eliminated by substitution. Inequalities are paired; a
/// pair containing a strict row yields a strict row. Redundancy is kept in
/// check by normalizing rows, dropping rows dominated by a tighter one, and
/// Imbert's ancestor bound (a row built from more than k+1 original
/// inequalities after k pairing steps is implied by the others).
namespace fm_detail {

struct Row {
  std::vector<Rational> a;
  Relation rel = Relation::ge;
  Rational rhs;
  boost::dynamic_bitset<> ancestors;  // empty for equality rows

  bool is_constant() const {
    return std::all_of(a.begin(), a.end(), [](const Rational& q) { return q == 0; });
  }
  bool constant_holds() const {
    switch (rel) {
      case Relation::ge:
        return rhs <= 0;
      case Relation::gt:
        return rhs < 0;
      case Relation::eq:
        return rhs == 0;
    }
    return false;
  }
};

struct State {
  std::size_t n = 0;
  std::vector<Row> rows;
  std::size_t pairings = 0;
  bool imbert = true;

  bool contradictory() const {
    for (const auto& r : rows)
      if (r.is_constant() && !r.constant_holds()) return true;
    return false;
  }
};

inline State from_system(const LinearSystem& s, bool imbert = true) {
  State st;
  st.n = s.variables();
  st.imbert = imbert;
  std::size_t ids = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = s.constraints()[i];
    Row r{c.normal, c.rel, c.rhs, {}};
    if (c.rel != Relation::eq) {
      r.ancestors.resize(ids);
      r.ancestors.set(i);
    }
    st.rows.push_back(std::move(r));
  }
  return st;
}

inline void normalize(Row& r) {
  auto it = std::find_if(r.a.begin(), r.a.end(), [](const Rational& q) { return q != 0; });
  if (it == r.a.end()) return;
  Rational s = r.rel == Relation::eq ? Rational(1 / *it) : Rational(1 / abs(*it));
  if (s == 1) return;
  for (auto& q : r.a) q *= s;
  r.rhs *= s;
}

/// True when `k` makes `r` redundant: same normal, at least as tight, and
/// (under Imbert pruning) built from a subset of r's ancestors, so that no
/// descendant of k is pruned where the matching descendant of r would not be.
inline bool dominates(const Row& k, const Row& r, bool imbert) {
  bool tighter = k.rhs > r.rhs || (k.rhs == r.rhs && (k.rel == Relation::gt || r.rel == Relation::ge));
  return tighter && (!imbert || k.ancestors.is_subset_of(r.ancestors));
}

/// Drops dominated rows and keeps a single constant row.
inline void simplify(State& st) {
  std::vector<Row> out;
  std::map<std::vector<Rational>, std::vector<std::size_t>> ineq_index;
  std::map<std::vector<Rational>, std::size_t> eq_index;
  std::vector<bool> dead;
  std::optional<Row> constant;
  for (auto& r : st.rows) {
    normalize(r);
    if (r.is_constant()) {
      bool holds = r.constant_holds();
      if (!constant || (constant->constant_holds() && !holds)) constant = std::move(r);
      continue;
    }
    if (r.rel == Relation::eq) {
      auto [it, inserted] = eq_index.emplace(r.a, out.size());
      if (inserted) {
        out.push_back(std::move(r));
        dead.push_back(false);
      } else if (out[it->second].rhs != r.rhs) {
        Row bad{std::vector<Rational>(st.n), Relation::eq, Rational(1), {}};
        if (!constant || constant->constant_holds()) constant = std::move(bad);
      }
      continue;
    }
    auto& kept = ineq_index[r.a];
    bool redundant = false;
    for (std::size_t i : kept)
      if (!dead[i] && dominates(out[i], r, st.imbert)) redundant = true;
    if (redundant) continue;
    for (std::size_t i : kept)
      if (!dead[i] && dominates(r, out[i], st.imbert)) dead[i] = true;
    kept.push_back(out.size());
    out.push_back(std::move(r));
    dead.push_back(false);
  }
  std::vector<Row> live;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!dead[i]) live.push_back(std::move(out[i]));
  if (constant) live.push_back(std::move(*constant));
  st.rows = std::move(live);
}

inline void eliminate(State& st, std::size_t v) {
  // Substitution through an equality containing v, if there is one.
  auto pivot = std::find_if(st.rows.begin(), st.rows.end(),
                            [v](const Row& r) { return r.rel == Relation::eq && r.a[v] != 0; });
  if (pivot != st.rows.end()) {
    Row e = std::move(*pivot);
    st.rows.erase(pivot);
    for (auto& r : st.rows) {
      if (r.a[v] == 0) continue;
      Rational f = r.a[v] / e.a[v];
      for (std::size_t j = 0; j < st.n; ++j)
        if (e.a[j] != 0) r.a[j] -= f * e.a[j];
      r.rhs -= f * e.rhs;
      r.a[v] = 0;
    }
    simplify(st);
    return;
  }

  std::vector<Row> pos, neg, out;
  for (auto& r : st.rows) {
    if (r.a[v] > 0)
      pos.push_back(std::move(r));
    else if (r.a[v] < 0)
      neg.push_back(std::move(r));
    else
      out.push_back(std::move(r));
  }
  ++st.pairings;
  const std::size_t bound = st.pairings + 1;
  for (const auto& p : pos) {
    for (const auto& q : neg) {
      boost::dynamic_bitset<> anc = p.ancestors | q.ancestors;
      if (st.imbert && anc.count() > bound) continue;
      Rational mp = -q.a[v];  // > 0
      Rational mq = p.a[v];   // > 0
      Row r;
      r.a.resize(st.n);
      for (std::size_t j = 0; j < st.n; ++j) {
        if (p.a[j] == 0 && q.a[j] == 0) continue;
        r.a[j] = mp * p.a[j] + mq * q.a[j];
      }
      r.a[v] = 0;
      r.rhs = mp * p.rhs + mq * q.rhs;
      r.rel = (p.rel == Relation::gt || q.rel == Relation::gt) ? Relation::gt : Relation::ge;
      r.ancestors = std::move(anc);
      out.push_back(std::move(r));
    }
  }
  st.rows = std::move(out);
  simplify(st);
}

/// Picks the next variable: one with an equality to substitute through if
/// possible, otherwise the one producing the fewest pairs.
inline std::size_t choose_variable(const State& st, const std::vector<bool>& remaining) {
  std::size_t best = st.n;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < st.n; ++v) {
    if (!remaining[v]) continue;
    std::size_t pos = 0, neg = 0;
    bool eq = false;
    for (const auto& r : st.rows) {
      if (r.a[v] == 0) continue;
      if (r.rel == Relation::eq) eq = true;
      if (r.a[v] > 0)
        ++pos;
      else
        ++neg;
    }
    std::size_t cost = eq ? 0 : pos * neg;
    if (cost < best_cost) {
      best_cost = cost;
      best = v;
    }
  }
  return best;
}

/// Bounds on a single variable v implied by the rows of `st` once every other
/// variable is fixed to `x` (entries of eliminated variables are ignored).
struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  bool empty = false;

  void lower(const Rational& q, bool strict) {
    if (!lo || q > *lo || (q == *lo && strict)) {
      lo = q;
      lo_strict = strict;
    }
  }
  void upper(const Rational& q, bool strict) {
    if (!hi || q < *hi || (q == *hi && strict)) {
      hi = q;
      hi_strict = strict;
    }
  }
  bool is_empty() const {
    if (empty) return true;
    if (lo && hi) return *lo > *hi || (*lo == *hi && (lo_strict || hi_strict));
    return false;
  }
  /// Deterministic representative: a closed endpoint when available.
  Rational pick() const {
    if (lo && !lo_strict) return *lo;
    if (hi && !hi_strict) return *hi;
    if (lo && hi) return (*lo + *hi) / 2;
    if (lo) return *lo + 1;
    if (hi) return *hi - 1;
    return 0;
  }
};

inline Interval bounds_for(const State& st, std::size_t v, const std::vector<Rational>& x,
                           const std::vector<bool>& fixed) {
  Interval iv;
  for (const auto& r : st.rows) {
    Rational rest = r.rhs;
    for (std::size_t j = 0; j < st.n; ++j)
      if (j != v && r.a[j] != 0 && fixed[j]) rest -= r.a[j] * x[j];
    const Rational& a = r.a[v];
    if (a == 0) {
      Row probe{std::vector<Rational>(st.n), r.rel, rest, {}};
      if (!probe.constant_holds()) iv.empty = true;
      continue;
    }
    Rational bound = rest / a;
    bool strict = r.rel == Relation::gt;
    if (r.rel == Relation::eq) {
      iv.lower(bound, false);
      iv.upper(bound, false);
    } else if (a > 0) {
      iv.lower(bound, strict);
    } else {
      iv.upper(bound, strict);
    }
  }
  return iv;
}

inline LinearSystem to_system(const State& st) {
  LinearSystem s(st.n);
  for (const auto& r : st.rows) s.add(r.a, r.rel, r.rhs);
  return s;
}

}  // namespace fm_detail

/// Projects out variable v. The result lives in the remaining n-1 variables
/// (indices above v shift down by one) and has exactly the projection of
/// the solution set of S as its solution set. Constant rows are reduced to a
/// single representative, contradictory if the system is infeasible.
inline LinearSystem fm_eliminate(const LinearSystem& s, std::size_t v) {
  if (v >= s.variables()) throw PreconditionError("fm_eliminate: variable index out of range");
  fm_detail::State st = fm_detail::from_system(s);
  fm_detail::eliminate(st, v);
  LinearSystem out(s.variables() - 1);
  for (auto& r : st.rows) {
    std::vector<Rational> a = r.a;
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(v));
    out.add(std::move(a), r.rel, r.rhs);
  }
  return out;
}

/// Projects onto the first `keep` variables by eliminating all others.
inline LinearSystem fm_project(const LinearSystem& s, std::size_t keep) {
  if (keep > s.variables()) throw PreconditionError("fm_project: keep exceeds the variable count");
  fm_detail::State st = fm_detail::from_system(s);
  fm_detail::simplify(st);
  std::vector<bool> remaining(st.n, false);
  for (std::size_t v = keep; v < st.n; ++v) remaining[v] = true;
  for (std::size_t k = keep; k < st.n; ++k) {
    std::size_t v = fm_detail::choose_variable(st, remaining);
    remaining[v] = false;
    fm_detail::eliminate(st, v);
  }
  LinearSystem out(keep);
  for (auto& r : st.rows) {
    r.a.resize(keep);
    out.add(std::move(r.a), r.rel, r.rhs);
  }
  return out;
}

/// True when the system has no solution.
inline bool fm_infeasible(const LinearSystem& s, bool imbert = true) {
  fm_detail::State st = fm_detail::from_system(s, imbert);
  std::vector<bool> remaining(st.n, true);
  for (std::size_t k = 0; k < st.n; ++k) {
    std::size_t v = fm_detail::choose_variable(st, remaining);
    remaining[v] = false;
    fm_detail::eliminate(st, v);
    if (st.contradictory()) return true;
  }
  return st.contradictory();
}

/// A solution of S found by full elimination followed by back-substitution,
/// or nothing when S is infeasible. Strict rows are honoured exactly.
inline std::optional<std::vector<Rational>> fm_find_point(const LinearSystem& s) {
  fm_detail::State st = fm_detail::from_system(s);
  fm_detail::simplify(st);
  std::vector<bool> remaining(st.n, true);
  std::vector<std::size_t> order;
  std::vector<fm_detail::State> history;
  for (std::size_t k = 0; k < st.n; ++k) {
    std::size_t v = fm_detail::choose_variable(st, remaining);
    remaining[v] = false;
    order.push_back(v);
    history.push_back(st);
    fm_detail::eliminate(st, v);
    if (st.contradictory()) return std::nullopt;
  }
  if (st.contradictory()) return std::nullopt;
  std::vector<Rational> x(st.n);
  std::vector<bool> fixed(st.n, false);
  for (std::size_t k = order.size(); k-- > 0;) {
    std::size_t v = order[k];
    fm_detail::Interval iv = fm_detail::bounds_for(history[k], v, x, fixed);
    if (iv.is_empty()) throw InternalInconsistency("fm_find_point: back-substitution hit an empty interval");
    x[v] = iv.pick();
    fixed[v] = true;
  }
  if (!s.satisfied_by(x)) throw InternalInconsistency("fm_find_point: reconstructed point violates the system");
  return x;
}

struct FMOptimum {
  bool feasible = false;
  Extended value;         // inf over empty = +inf, sup over empty = -inf
  bool attained = false;  // only meaningful for finite values
};

/// Optimizes objective . x over S by introducing t = objective . x and
/// eliminating every original variable; the bounds left on t are exact.
inline FMOptimum fm_optimize(const std::vector<Rational>& objective, const LinearSystem& s, Sense sense,
                             bool imbert = true) {
  const std::size_t n = s.variables();
  if (objective.size() != n) throw ShapeError("fm_optimize: objective dimension mismatch");
  LinearSystem ext(n + 1);
  for (const auto& c : s.constraints()) {
    std::vector<Rational> a = c.normal;
    a.push_back(0);
    ext.add(std::move(a), c.rel, c.rhs);
  }
  std::vector<Rational> link(n + 1);
  for (std::size_t i = 0; i < n; ++i) link[i] = -objective[i];
  link[n] = 1;
  ext.add(std::move(link), Relation::eq, 0);

  fm_detail::State st = fm_detail::from_system(ext, imbert);
  std::vector<bool> remaining(n + 1, true);
  remaining[n] = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t v = fm_detail::choose_variable(st, remaining);
    remaining[v] = false;
    fm_detail::eliminate(st, v);
  }
  FMOptimum out;
  std::vector<Rational> none(n + 1);
  std::vector<bool> fixed(n + 1, false);
  fm_detail::Interval iv = fm_detail::bounds_for(st, n, none, fixed);
  if (iv.is_empty()) {
    out.value = sense == Sense::minimize ? Extended::pos_inf() : Extended::neg_inf();
    return out;
  }
  out.feasible = true;
  if (sense == Sense::minimize) {
    if (!iv.lo) {
      out.value = Extended::neg_inf();
    } else {
      out.value = *iv.lo;
      out.attained = !iv.lo_strict;
    }
  } else {
    if (!iv.hi) {
      out.value = Extended::pos_inf();
    } else {
      out.value = *iv.hi;
      out.attained = !iv.hi_strict;
    }
  }
  return out;
}

}  // namespace conicdual::lp
