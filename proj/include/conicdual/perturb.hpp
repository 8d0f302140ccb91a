#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conicdual/cone.hpp"
#include "conicdual/gale.hpp"
#include "conicdual/lp/linear_system.hpp"
#include "conicdual/problem.hpp"
#include "conicdual/program.hpp"
#include "conicdual/values.hpp"

namespace conicdual {

// Perturbed pair, for z in Z and y in Y:
//   primal(z, y) = inf <x, c - y>   s.t.  Ax - b - z in Q,  x in P
//   dual(z, y)   = sup <b + z, w>   s.t.  c - y - A*w in P*,  w in Q*
// v_D(z) = dual(z, 0), v_P(y) = primal(0, y), val(P) = primal(0, 0),
// val(D) = dual(0, 0).
//
//   H = {(z, r) : exists x in P, Ax - b - z in Q, <x, c> <= r}
//   K = {(y, r) : exists w in Q*, c - A*w - y in P*, <b, w> >= r}
//   N = epi v_D,  M = hypo v_P.

namespace perturb_detail {

using lp::AffineForm;
using lp::Relation;

inline std::vector<AffineForm> vars(std::size_t first, std::size_t k) {
  std::vector<AffineForm> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(AffineForm::variable(first + i));
  return out;
}

/// Forms (A x)_i over the variables x.
inline std::vector<AffineForm> image(const LinearMap& a, const std::vector<AffineForm>& x) {
  std::vector<AffineForm> out(a.row_count());
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      Rational q = a.entry(i, j);
      if (q != 0) out[i] += q * x[j];
    }
  return out;
}

/// Forms (A* w)_j over the variables w.
inline std::vector<AffineForm> adjoint_image(const LinearMap& a, const std::vector<AffineForm>& w) {
  std::vector<AffineForm> out(a.col_count());
  for (std::size_t j = 0; j < a.col_count(); ++j)
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rational q = a.entry(i, j);
      if (q != 0) out[j] += q * w[i];
    }
  return out;
}

inline detail::Program primal_program(const Problem& p, const Vector& z, const Vector& y) {
  const std::size_t n = p.x_dim();
  lp::SystemBuilder b;
  auto x = vars(b.add_variables(n), n);
  auto ax = image(p.A(), x);
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] += AffineForm::constant_of(-(p.b()[i] + z[i]));
  constrain_member(b, p.Q(), ax);
  constrain_member(b, p.P(), x);
  detail::Program pr;
  pr.system = b.build();
  pr.objective.assign(pr.system.variables(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) pr.objective[j] = p.c()[j] - y[j];
  pr.sense = lp::Sense::minimize;
  pr.keep = n;
  return pr;
}

inline detail::Program dual_program(const Problem& p, const Vector& z, const Vector& y) {
  if (p.is_gale()) return gale_dual_program(p, z, y);
  const std::size_t m = p.z_dim();
  lp::SystemBuilder b;
  auto w = vars(b.add_variables(m), m);
  constrain_member(b, p.Q_dual(), w);
  auto aw = adjoint_image(p.A(), w);
  std::vector<AffineForm> slack;
  for (std::size_t j = 0; j < aw.size(); ++j)
    slack.push_back(AffineForm::constant_of(p.c()[j] - y[j]) - aw[j]);
  constrain_member(b, p.P_dual(), slack);
  detail::Program pr;
  pr.system = b.build();
  pr.objective.assign(pr.system.variables(), Rational(0));
  for (std::size_t i = 0; i < m; ++i) pr.objective[i] = p.b()[i] + z[i];
  pr.sense = lp::Sense::maximize;
  pr.keep = m;
  return pr;
}

inline bool below(const ExtendedValue& v, const Rational& r) {
  return v.value < Extended(r) || (v.value == Extended(r) && v.attained);
}
inline bool above(const ExtendedValue& v, const Rational& r) {
  return v.value > Extended(r) || (v.value == Extended(r) && v.attained);
}

}  // namespace perturb_detail

inline ExtendedValue primal_value(const Problem& p, const Vector& z, const Vector& y) {
  p.check_z(z);
  p.check_y(y);
  if (p.is_gale()) return gale_primal_value_at(p.alpha() + z[0], p.beta() + z[1], y);
  return detail::solve(perturb_detail::primal_program(p, z, y));
}

inline ExtendedValue dual_value(const Problem& p, const Vector& z, const Vector& y) {
  p.check_z(z);
  p.check_y(y);
  return detail::solve(perturb_detail::dual_program(p, z, y));
}

inline ExtendedValue val_primal(const Problem& p) { return primal_value(p, p.zero_z(), p.zero_y()); }
inline ExtendedValue val_dual(const Problem& p) { return dual_value(p, p.zero_z(), p.zero_y()); }
inline ExtendedValue v_D(const Problem& p, const Vector& z) { return dual_value(p, z, p.zero_y()); }
inline ExtendedValue v_P(const Problem& p, const Vector& y) { return primal_value(p, p.zero_z(), y); }

/// Feasible x of primal(z, y) with <x, c - y> <= bound (< when strict).
inline std::optional<Vector> primal_point_below(const Problem& p, const Vector& z, const Vector& y,
                                                const Rational& bound, bool strict) {
  p.check_z(z);
  p.check_y(y);
  if (p.is_gale()) return gale_primal_point_at(p.alpha() + z[0], p.beta() + z[1], y, bound, strict);
  detail::Program pr = perturb_detail::primal_program(p, z, y);
  auto pt = detail::point_beyond(pr, bound, strict);
  if (!pt) return std::nullopt;
  return detail::leading(*pt, pr.keep);
}

/// Feasible w of dual(z, y) with <b + z, w> >= bound (> when strict).
inline std::optional<Vector> dual_point_above(const Problem& p, const Vector& z, const Vector& y,
                                              const Rational& bound, bool strict) {
  p.check_z(z);
  p.check_y(y);
  detail::Program pr = perturb_detail::dual_program(p, z, y);
  auto pt = detail::point_beyond(pr, bound, strict);
  if (!pt) return std::nullopt;
  return detail::leading(*pt, pr.keep);
}

/// Direct substitution checks for certificates.
inline bool primal_feasible(const Problem& p, const Vector& z, const Vector& x) {
  p.check_z(z);
  if (p.is_gale()) return gale_primal_feasible(p.alpha() + z[0], p.beta() + z[1], x);
  if (!x.is_dense() || x.dimension() != p.x_dim()) return false;
  return member(p.P(), x) && member(p.Q(), p.A().apply(x) - p.b() - z);
}

inline bool dual_feasible(const Problem& p, const Vector& y, const Vector& w) {
  p.check_y(y);
  if (!w.is_dense() || w.dimension() != p.z_dim()) return false;
  return member(p.Q_dual(), w) && member(p.P_dual(), p.c() - y - p.A().adjoint_apply(w));
}

inline bool member_Hy(const Problem& p, const Vector& y, const SetPoint& pt) {
  return perturb_detail::below(primal_value(p, pt.base, y), pt.height);
}

inline bool member_H(const Problem& p, const SetPoint& pt) {
  if (p.is_gale()) return gale_member_H(p, pt);
  return member_Hy(p, p.zero_y(), pt);
}

inline bool member_N(const Problem& p, const SetPoint& pt) {
  return v_D(p, pt.base).value <= Extended(pt.height);
}

inline bool member_Kz(const Problem& p, const Vector& z, const SetPoint& pt) {
  return perturb_detail::above(dual_value(p, z, pt.base), pt.height);
}

inline bool member_K(const Problem& p, const SetPoint& pt) { return member_Kz(p, p.zero_z(), pt); }

inline bool member_M(const Problem& p, const SetPoint& pt) {
  return v_P(p, pt.base).value >= Extended(pt.height);
}

/// H' = H + (b, 0).
inline bool member_shifted_H(const Problem& p, const SetPoint& pt) {
  p.check_z(pt.base);
  return member_H(p, {pt.base - p.b(), pt.height});
}

/// K' = K - (c, 0).
inline bool member_shifted_K(const Problem& p, const SetPoint& pt) {
  p.check_y(pt.base);
  return member_K(p, {pt.base + p.c(), pt.height});
}

/// Algebraic closure of H. A finite H is an affine image of a polyhedral
/// cone, hence closed and equal to its algebraic closure.
inline bool acl_member_H(const Problem& p, const SetPoint& pt) {
  if (p.is_gale()) return gale_member_closure_H(p, pt);
  return member_H(p, pt);
}

struct SliceReport {
  bool equal = false;
  bool nonempty = false;        // the H (resp. K) slice is nonempty
  Extended value;               // v_D(z) (resp. v_P(y))
  std::optional<Vector> witness;  // attaining primal x (resp. dual w)
};

/// H and N agree on {z} x R. Both slices are upward closed and H is inside
/// N, so they agree iff v_D(z) = +inf, or v_D(z) is finite and
/// (z, v_D(z)) lies in H, or v_D = -inf and the primal at z is unbounded.
inline SliceReport slice_equal_H_N(const Problem& p, const Vector& z) {
  ExtendedValue vd = v_D(p, z);
  ExtendedValue pv = primal_value(p, z, p.zero_y());
  SliceReport rep;
  rep.value = vd.value;
  rep.nonempty = pv.value < Extended::pos_inf();
  if (vd.value.is_pos_inf()) {
    rep.equal = true;
  } else if (vd.value.is_neg_inf()) {
    rep.equal = pv.value.is_neg_inf();
  } else {
    rep.equal = member_H(p, {z, vd.value.value()});
    if (rep.equal) rep.witness = pv.witness;
  }
  return rep;
}

/// K and M agree on {y} x R (mirror of slice_equal_H_N).
inline SliceReport slice_equal_K_M(const Problem& p, const Vector& y) {
  ExtendedValue vp = v_P(p, y);
  ExtendedValue dv = dual_value(p, p.zero_z(), y);
  SliceReport rep;
  rep.value = vp.value;
  rep.nonempty = dv.value > Extended::neg_inf();
  if (vp.value.is_neg_inf()) {
    rep.equal = true;
  } else if (vp.value.is_pos_inf()) {
    rep.equal = dv.value.is_pos_inf();
  } else {
    rep.equal = member_K(p, {y, vp.value.value()});
    if (rep.equal) rep.witness = dv.witness;
  }
  return rep;
}

/// A functional (v, beta) with value gamma: the linear form
/// (u, r) -> <u, v> + beta r separates a point strictly from a set when it
/// is <= gamma on the set and > gamma at the point.
struct Separator {
  Vector functional;
  Rational beta;
  Rational gamma;
};

/// sup over (z', r') in H of <z', wz> + wr r'.
inline Extended sup_over_H(const Problem& p, const Vector& wz, const Rational& wr) {
  using namespace perturb_detail;
  if (p.is_gale()) return gale_sup_over_H(p, wz, wr);
  const std::size_t n = p.x_dim(), m = p.z_dim();
  lp::SystemBuilder b;
  auto x = vars(b.add_variables(n), n);
  auto zp = vars(b.add_variables(m), m);
  std::size_t r = b.add_variables(1);
  constrain_member(b, p.P(), x);
  auto ax = image(p.A(), x);
  for (std::size_t i = 0; i < m; ++i) ax[i] += AffineForm::constant_of(-p.b()[i]) - zp[i];
  constrain_member(b, p.Q(), ax);
  AffineForm cost = AffineForm::variable(r);
  for (std::size_t j = 0; j < n; ++j) cost += Rational(-p.c()[j]) * x[j];
  b.add(cost, Relation::ge);
  AffineForm obj = wr * AffineForm::variable(r);
  for (std::size_t i = 0; i < m; ++i) obj += wz[i] * zp[i];
  lp::LinearSystem s = b.build();
  return detail::solve({s, b.objective(obj), lp::Sense::maximize, 0}).value;
}

/// sup over (y', r') in K of <x, y'> + xr r' (finite kind).
inline Extended sup_over_K(const Problem& p, const Vector& xv, const Rational& xr) {
  using namespace perturb_detail;
  if (p.is_gale()) throw UnsupportedError("sup_over_K: K of a gale problem lives over R^N");
  const std::size_t n = p.x_dim(), m = p.z_dim();
  lp::SystemBuilder b;
  auto w = vars(b.add_variables(m), m);
  auto yp = vars(b.add_variables(n), n);
  std::size_t r = b.add_variables(1);
  constrain_member(b, p.Q_dual(), w);
  auto aw = adjoint_image(p.A(), w);
  std::vector<AffineForm> slack;
  for (std::size_t j = 0; j < n; ++j) slack.push_back(AffineForm::constant_of(p.c()[j]) - aw[j] - yp[j]);
  constrain_member(b, p.P_dual(), slack);
  AffineForm value = Rational(-1) * AffineForm::variable(r);
  for (std::size_t i = 0; i < m; ++i) value += p.b()[i] * w[i];
  b.add(value, Relation::ge);
  AffineForm obj = xr * AffineForm::variable(r);
  for (std::size_t j = 0; j < n; ++j) obj += xv[j] * yp[j];
  lp::LinearSystem s = b.build();
  return detail::solve({s, b.objective(obj), lp::Sense::maximize, 0}).value;
}

/// Separates (z, r) outside N from H: a dual feasible w with
/// <b + z, w> > r gives (w, -1) with gamma = -<b, w>, since every (z', r')
/// in H has <z', w> - r' <= -<b, w>.
inline Separator separate_from_N(const Problem& p, const SetPoint& pt) {
  if (member_N(p, pt)) throw PreconditionError("separate_from_N: " + pt.str() + " lies in N");
  auto w = dual_point_above(p, pt.base, p.zero_y(), pt.height, true);
  if (!w) throw InternalInconsistency("separate_from_N: no dual point above a height below v_D");
  return {*w, Rational(-1), -pair(p.b(), *w)};
}

/// Separates (y, r) outside M from K: a primal feasible x with
/// <x, c - y> < r gives (x, +1) with gamma = <x, c>, since every (y', r')
/// in K has <x, y'> + r' <= <x, c> once P** = P.
inline Separator separate_from_M(const Problem& p, const SetPoint& pt) {
  if (p.is_gale()) throw UnsupportedError("separate_from_M: finite problems only");
  if (!cone_equal(bidual_cone(p.P()), p.P())) throw HypothesisError("separate_from_M: P** differs from P");
  if (member_M(p, pt)) throw PreconditionError("separate_from_M: " + pt.str() + " lies in M");
  auto x = primal_point_below(p, p.zero_z(), pt.base, pt.height, true);
  if (!x) throw InternalInconsistency("separate_from_M: no primal point below a height above v_P");
  return {*x, Rational(1), pair(*x, p.c())};
}

/// Strict at the point, and bounded by gamma over H by an LP maximization.
inline bool verify_separator_N(const Problem& p, const SetPoint& pt, const Separator& s) {
  Rational at = pair(pt.base, s.functional) + s.beta * pt.height;
  return at > s.gamma && sup_over_H(p, s.functional, s.beta) <= Extended(s.gamma);
}

inline bool verify_separator_M(const Problem& p, const SetPoint& pt, const Separator& s) {
  Rational at = pair(s.functional, pt.base) + s.beta * pt.height;
  return at > s.gamma && sup_over_K(p, s.functional, s.beta) <= Extended(s.gamma);
}

}  // namespace conicdual
