#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conicdual/lp/fourier_motzkin.hpp"
#include "conicdual/lp/simplex.hpp"
#include "conicdual/values.hpp"

namespace conicdual::detail {

/// A linear program whose first `keep` variables form the decision vector;
/// the rest are auxiliary (cone multipliers, slacks).
struct Program {
  lp::LinearSystem system;
  std::vector<Rational> objective;
  lp::Sense sense = lp::Sense::minimize;
  std::size_t keep = 0;
};

inline Vector leading(const std::vector<Rational>& v, std::size_t k) {
  return Vector::dense(std::vector<Rational>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)));
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

inline ExtendedValue solve(const Program& pr) {
  lp::LPOutcome o = lp::lp_solve(pr.objective, pr.system, pr.sense);
  ExtendedValue ev;
  switch (o.status) {
    case lp::LPStatus::infeasible:
      ev.value = pr.sense == lp::Sense::minimize ? Extended::pos_inf() : Extended::neg_inf();
      break;
    case lp::LPStatus::unbounded:
      ev.value = pr.sense == lp::Sense::minimize ? Extended::neg_inf() : Extended::pos_inf();
      ev.feasible_point = leading(*o.feasible_point, pr.keep);
      ev.ray = leading(*o.ray, pr.keep);
      break;
    case lp::LPStatus::optimal:
      ev.value = *o.value;
      ev.attained = true;
      ev.witness = leading(*o.witness, pr.keep);
      break;
  }
  return ev;
}

/// A feasible point whose objective beats `bound` (strictly if asked):
/// objective <= bound when minimizing, >= bound when maximizing.
inline std::optional<std::vector<Rational>> point_beyond(const Program& pr, const Rational& bound, bool strict) {
  const bool minimize = pr.sense == lp::Sense::minimize;
  if (!strict) {
    lp::LinearSystem s = pr.system;
    std::vector<Rational> row = pr.objective;
    if (minimize)
      for (auto& q : row) q = -q;
    s.add(std::move(row), lp::Relation::ge, minimize ? Rational(-bound) : bound);
    lp::LPOutcome o = lp::lp_solve(std::vector<Rational>(s.variables()), s, lp::Sense::minimize);
    if (o.status == lp::LPStatus::infeasible) return std::nullopt;
    return o.witness;
  }
  lp::LPOutcome o = lp::lp_solve(pr.objective, pr.system, pr.sense);
  if (o.status == lp::LPStatus::infeasible) return std::nullopt;
  if (o.status == lp::LPStatus::optimal) {
    bool beats = minimize ? *o.value < bound : *o.value > bound;
    if (!beats) return std::nullopt;
    return o.witness;
  }
  // Walk along the improving ray until the bound is passed.
  const auto& p = *o.feasible_point;
  const auto& r = *o.ray;
  Rational at = dot(pr.objective, p);
  Rational gain = abs(dot(pr.objective, r));
  Rational shortfall = minimize ? Rational(at - bound) : Rational(bound - at);
  Rational t = (shortfall > 0 ? Rational(shortfall / gain) : Rational(0)) + 1;
  std::vector<Rational> x(p.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = p[i] + t * r[i];
  return x;
}

inline Extended shift(const Extended& e, const Rational& c) {
  return e.is_finite() ? Extended(e.value() + c) : e;
}

}  // namespace conicdual::detail
