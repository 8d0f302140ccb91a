#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conicdual/lp/linear_system.hpp"

namespace conicdual::lp {

enum class LPStatus { infeasible, unbounded, optimal };

inline const char* status_name(LPStatus s) {
  switch (s) {
    case LPStatus::infeasible:
      return "infeasible";
    case LPStatus::unbounded:
      return "unbounded";
    case LPStatus::optimal:
      return "optimal";
  }
  return "?";
}

/// Verdict of lp_solve with the certificate matching its status.
struct LPOutcome {
  LPStatus status = LPStatus::infeasible;
  std::optional<Rational> value;                 // iff optimal
  std::optional<std::vector<Rational>> witness;  // iff optimal
  std::optional<std::vector<Rational>> ray;      // iff unbounded
  std::optional<std::vector<Rational>> feasible_point;  // iff unbounded; base point of the ray
  /// iff infeasible: y with y_i >= 0 on inequality rows, sum_i y_i a_i = 0
  /// and sum_i y_i b_i = 1, i.e. the combination 0 >= 1.
  std::optional<std::vector<Rational>> farkas;
};

namespace simplex_detail {

/// Dense tableau in canonical form with respect to `basis`.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis, std::size_t cols)
      : t_(std::move(rows)), basis_(std::move(basis)), cols_(cols) {}

  enum class Result { optimal, unbounded };

  /// Minimizes cost over the columns flagged in `allowed` with Bland's rule.
  Result minimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed, std::size_t& entering) {
    const std::size_t m = t_.size();
    std::vector<bool> in_basis(cols_, false);
    for (;;) {
      std::fill(in_basis.begin(), in_basis.end(), false);
      for (std::size_t b : basis_) in_basis[b] = true;
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_ && enter == cols_; ++j) {
        if (!allowed[j] || in_basis[j]) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < m; ++i)
          if (t_[i][j] != 0 && cost[basis_[i]] != 0) rc -= cost[basis_[i]] * t_[i][j];
        if (rc < 0) enter = j;
      }
      if (enter == cols_) return Result::optimal;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) {
        entering = enter;
        return Result::unbounded;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (auto& q : t_[r])
      if (q != 0) q /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  std::vector<Rational> basic_solution() const {
    std::vector<Rational> v(cols_);
    for (std::size_t i = 0; i < t_.size(); ++i) v[basis_[i]] = t_[i][cols_];
    return v;
  }

  std::vector<Rational> edge_direction(std::size_t enter) const {
    std::vector<Rational> d(cols_);
    d[enter] = 1;
    for (std::size_t i = 0; i < t_.size(); ++i) d[basis_[i]] -= t_[i][enter];
    return d;
  }

  const std::vector<std::vector<Rational>>& rows() const { return t_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

inline std::vector<Rational> recover(const std::vector<Rational>& std_vals, std::size_t n) {
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std_vals[j] - std_vals[n + j];
  return x;
}

}  // namespace simplex_detail

LPOutcome lp_solve(const std::vector<Rational>& objective, const LinearSystem& s, Sense sense);

/// Multipliers proving infeasibility, found by solving the alternative
/// system  A^T y = 0, b^T y = 1, y >= 0 on inequality rows.
inline std::vector<Rational> farkas_certificate(const LinearSystem& s) {
  const std::size_t m = s.size();
  const std::size_t n = s.variables();
  LinearSystem alt(m);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = s.constraints()[i].normal[j];
    alt.add(std::move(row), Relation::eq, 0);
  }
  std::vector<Rational> rhs_row(m);
  for (std::size_t i = 0; i < m; ++i) rhs_row[i] = s.constraints()[i].rhs;
  alt.add(std::move(rhs_row), Relation::eq, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (s.constraints()[i].rel == Relation::eq) continue;
    std::vector<Rational> e(m);
    e[i] = 1;
    alt.add(std::move(e), Relation::ge, 0);
  }
  LPOutcome o = lp_solve(std::vector<Rational>(m), alt, Sense::minimize);
  if (o.status != LPStatus::optimal)
    throw InternalInconsistency("infeasible system without a Farkas certificate");
  return *o.witness;
}

/// Exact two-phase primal simplex with Bland's anti-cycling rule over a
/// system of >= and = rows on free variables.
inline LPOutcome lp_solve(const std::vector<Rational>& objective, const LinearSystem& s, Sense sense) {
  using simplex_detail::Tableau;
  if (s.has_strict()) throw PreconditionError("lp_solve: strict constraints must go through fm_optimize");
  const std::size_t n = s.variables();
  if (objective.size() != n) throw ShapeError("lp_solve: objective dimension mismatch");
  const std::size_t m = s.size();

  // Columns: x+ (n), x- (n), one surplus per inequality row, one artificial per row.
  std::vector<std::size_t> surplus_of(m, 0);
  std::size_t cols = 2 * n;
  for (std::size_t i = 0; i < m; ++i)
    if (s.constraints()[i].rel == Relation::ge) surplus_of[i] = cols++;
  const std::size_t first_artificial = cols;
  cols += m;

  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& c = s.constraints()[i];
    auto& row = rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c.normal[j];
      row[n + j] = -c.normal[j];
    }
    if (c.rel == Relation::ge) row[surplus_of[i]] = -1;
    row[cols] = c.rhs;
    if (c.rhs < 0)
      for (auto& q : row) q = -q;
    row[first_artificial + i] = 1;
    basis[i] = first_artificial + i;
  }
  Tableau tab(std::move(rows), std::move(basis), cols);

  std::vector<bool> allowed(cols, true);
  std::vector<Rational> phase1(cols);
  for (std::size_t i = 0; i < m; ++i) phase1[first_artificial + i] = 1;
  std::size_t entering = 0;
  tab.minimize(phase1, allowed, entering);  // bounded below by 0

  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis()[i] >= first_artificial) infeas += tab.rows()[i][cols];
  LPOutcome out;
  if (infeas > 0) {
    out.status = LPStatus::infeasible;
    out.farkas = farkas_certificate(s);
    return out;
  }

  // Drive zero-valued artificials out of the basis where possible; rows that
  // cannot be pivoted are redundant and keep their artificial at zero.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < first_artificial) continue;
    for (std::size_t j = 0; j < first_artificial; ++j) {
      if (tab.rows()[i][j] != 0) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;

  std::vector<Rational> cost(cols);
  Rational dir = sense == Sense::minimize ? Rational(1) : Rational(-1);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = dir * objective[j];
    cost[n + j] = -dir * objective[j];
  }
  auto result = tab.minimize(cost, allowed, entering);
  std::vector<Rational> x = simplex_detail::recover(tab.basic_solution(), n);
  if (result == Tableau::Result::unbounded) {
    out.status = LPStatus::unbounded;
    out.ray = simplex_detail::recover(tab.edge_direction(entering), n);
    out.feasible_point = std::move(x);
    return out;
  }
  out.status = LPStatus::optimal;
  Rational v = 0;
  for (std::size_t j = 0; j < n; ++j) v += objective[j] * x[j];
  out.value = v;
  out.witness = std::move(x);
  return out;
}

/// Re-checks an outcome by direct substitution: witness feasibility and
/// value, ray feasibility and strict improvement, or the Farkas identity.
inline bool verify_outcome(const std::vector<Rational>& objective, const LinearSystem& s, Sense sense,
                           const LPOutcome& o) {
  const std::size_t n = s.variables();
  auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
  };
  switch (o.status) {
    case LPStatus::optimal:
      return o.witness && o.value && o.witness->size() == n && s.satisfied_by(*o.witness) &&
             dot(objective, *o.witness) == *o.value;
    case LPStatus::unbounded: {
      if (!o.ray || !o.feasible_point || !s.satisfied_by(*o.feasible_point)) return false;
      for (const auto& c : s.constraints()) {
        Rational d = dot(c.normal, *o.ray);
        if (c.rel == Relation::eq ? d != 0 : d < 0) return false;
      }
      Rational gain = dot(objective, *o.ray);
      return sense == Sense::minimize ? gain < 0 : gain > 0;
    }
    case LPStatus::infeasible: {
      if (!o.farkas || o.farkas->size() != s.size()) return false;
      std::vector<Rational> combo(n);
      Rational rhs = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& c = s.constraints()[i];
        const Rational& y = (*o.farkas)[i];
        if (c.rel != Relation::eq && y < 0) return false;
        for (std::size_t j = 0; j < n; ++j) combo[j] += y * c.normal[j];
        rhs += y * c.rhs;
      }
      for (const auto& q : combo)
        if (q != 0) return false;
      return rhs > 0;
    }
  }
  return false;
}

}  // namespace conicdual::lp
