#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "conicdual/lp/fourier_motzkin.hpp"
#include "conicdual/lp/simplex.hpp"
#include "conicdual/problem.hpp"
#include "conicdual/program.hpp"
#include "conicdual/values.hpp"

namespace conicdual {

/// Gale's sequence-space family
///   min x_0  s.t.  x_0 + sum_{i>=1} i x_i = alpha,  sum_{i>=1} x_i = beta,
///                  x in R_+^(N).
/// Its dual  max alpha w_1 + beta w_2  s.t.  w_1 <= 1, i w_1 + w_2 <= 0
/// (i >= 1)  has feasible set {w_1 <= 0, w_1 + w_2 <= 0}, so v_D is 0 on
/// {z_1 + alpha >= z_2 + beta >= 0} and +inf elsewhere, while val(P) = alpha
/// when beta = 0 < alpha: a positive gap.
inline Problem gale_problem(Rational alpha, Rational beta) { return Problem::gale(std::move(alpha), std::move(beta)); }

namespace gale_detail {

inline void require_gale(const Problem& g) {
  if (!g.is_gale()) throw UnsupportedError("operation defined for gale problems only");
}

inline Vector dense2(Rational a, Rational b) { return Vector::dense({std::move(a), std::move(b)}); }

/// A nonnegative sequence with sum_{i>=1} x_i = v and sum_{i>=1} i x_i = u,
/// supported on {floor(u/v), ceil(u/v)} (one index when u/v is integral).
/// Requires v > 0 and u >= v.
inline Vector::Support two_point_mix(const Rational& u, const Rational& v) {
  Rational ratio = u / v;
  Integer f = floor_int(ratio);
  Vector::Support s;
  std::size_t fi = static_cast<std::size_t>(f.convert_to<unsigned long>());
  if (is_integral(ratio)) {
    s[fi] = v;
    return s;
  }
  Rational upper = u - Rational(f) * v;  // weight on ceil
  s[fi + 1] = upper;
  s[fi] = v - upper;
  return s;
}

inline Vector add_support(Vector::Support a, const Vector::Support& b) {
  for (const auto& [i, q] : b) a[i] += q;
  return Vector::finite_support(std::move(a));
}

/// The perturbed primal at right-hand side (a, b) with cost e_0 - y, split
/// at the last index m touched by y. Indices beyond m cost nothing and only
/// enter through u = sum_{i>m} i x_i and v = sum_{i>m} x_i, which range
/// over {(0,0)} and {v > 0, u >= (m+1) v}. Variables: x_0..x_m, u, v.
struct Branches {
  std::size_t m = 1;
  lp::LinearSystem tail_empty;  // u = v = 0
  lp::LinearSystem tail_used;   // v > 0, u >= (m+1) v
  std::vector<Rational> cost;

  std::size_t u() const { return m + 1; }
  std::size_t v() const { return m + 2; }
  std::size_t size() const { return m + 3; }
};

inline Branches branches(const Rational& a, const Rational& b, const Vector& y) {
  Branches br;
  std::size_t end = y.support_end();
  br.m = std::max<std::size_t>(1, end == 0 ? 0 : end - 1);
  const std::size_t n = br.size();
  lp::LinearSystem s(n);
  for (std::size_t i = 0; i <= br.m; ++i) {
    std::vector<Rational> e(n);
    e[i] = 1;
    s.add(std::move(e), lp::Relation::ge, 0);
  }
  std::vector<Rational> moment(n), mass(n);
  moment[0] = 1;
  for (std::size_t i = 1; i <= br.m; ++i) {
    moment[i] = Rational(Integer(i));
    mass[i] = 1;
  }
  moment[br.u()] = 1;
  mass[br.v()] = 1;
  s.add(moment, lp::Relation::eq, a);
  s.add(mass, lp::Relation::eq, b);

  br.tail_empty = s;
  std::vector<Rational> eu(n), ev(n);
  eu[br.u()] = 1;
  ev[br.v()] = 1;
  br.tail_empty.add(eu, lp::Relation::eq, 0);
  br.tail_empty.add(ev, lp::Relation::eq, 0);

  br.tail_used = s;
  br.tail_used.add(ev, lp::Relation::gt, 0);
  std::vector<Rational> ratio(n);
  ratio[br.u()] = 1;
  ratio[br.v()] = -Rational(Integer(br.m + 1));
  br.tail_used.add(std::move(ratio), lp::Relation::ge, 0);

  br.cost.assign(n, Rational(0));
  for (std::size_t i = 0; i <= br.m; ++i) br.cost[i] = -y.at(i);
  br.cost[0] += 1;
  return br;
}

inline Vector realize(const Branches& br, const std::vector<Rational>& pt) {
  Vector::Support head;
  for (std::size_t i = 0; i <= br.m; ++i) head[i] = pt[i];
  const Rational& v = pt[br.v()];
  if (v == 0) return Vector::finite_support(std::move(head));
  return add_support(std::move(head), two_point_mix(pt[br.u()], v));
}

inline Rational moment(const Vector& x) {
  Rational s = 0;
  for (const auto& [i, q] : x.support()) s += (i == 0 ? Rational(1) : Rational(Integer(i))) * q;
  return s;
}

}  // namespace gale_detail

/// x lies in R_+^(N) and satisfies both equality rows at (a, b).
inline bool gale_primal_feasible(const Rational& a, const Rational& b, const Vector& x) {
  if (x.shape() != Vector::Shape::finite_support) return false;
  Rational mass = 0;
  for (const auto& [i, q] : x.support()) {
    if (q < 0) return false;
    if (i >= 1) mass += q;
  }
  return gale_detail::moment(x) == a && mass == b;
}

/// inf <x, e_0 - y> over the perturbed primal with right-hand side (a, b),
/// computed exactly for finitely supported y by splitting off the tail.
inline ExtendedValue gale_primal_value_at(const Rational& a, const Rational& b, const Vector& y) {
  using namespace gale_detail;
  Branches br = branches(a, b, y);
  ExtendedValue best;
  best.value = Extended::pos_inf();

  lp::LPOutcome o = lp::lp_solve(br.cost, br.tail_empty, lp::Sense::minimize);
  if (o.status == lp::LPStatus::unbounded) throw InternalInconsistency("gale primal: bounded region reported unbounded");
  if (o.status == lp::LPStatus::optimal) {
    best.value = *o.value;
    best.attained = true;
    best.witness = realize(br, *o.witness);
  }

  lp::FMOptimum f = lp::fm_optimize(br.cost, br.tail_used, lp::Sense::minimize);
  if (f.feasible && f.value < best.value) {
    best = ExtendedValue{};
    best.value = f.value;
  }
  if (f.feasible && f.attained && f.value == best.value && !best.attained) {
    lp::LinearSystem at = br.tail_used;
    at.add(br.cost, lp::Relation::eq, f.value.value());
    auto pt = lp::fm_find_point(at);
    if (!pt) throw InternalInconsistency("gale primal: attained value without a point");
    best.attained = true;
    best.witness = realize(br, *pt);
  }
  return best;
}

/// A feasible x of the perturbed primal at (a, b) with <x, e_0 - y> <= bound
/// (< bound when strict).
inline std::optional<Vector> gale_primal_point_at(const Rational& a, const Rational& b, const Vector& y,
                                                  const Rational& bound, bool strict) {
  using namespace gale_detail;
  Branches br = branches(a, b, y);
  std::vector<Rational> neg = br.cost;
  for (auto& q : neg) q = -q;
  for (const lp::LinearSystem* s : {&br.tail_empty, &br.tail_used}) {
    lp::LinearSystem t = *s;
    t.add(neg, strict ? lp::Relation::gt : lp::Relation::ge, -bound);
    if (auto pt = lp::fm_find_point(t)) return realize(br, *pt);
  }
  return std::nullopt;
}

/// The dual at (z, y): max <b + z, w> s.t. e_0 - y - A* w in R_+^N.
/// Entry 0 reads 1 - w_1 - y_0 >= 0, entry i reads -(i w_1 + w_2) - y_i >= 0;
/// past the support of y the constraints collapse to w_1 <= 0 and
/// (m+1) w_1 + w_2 <= 0.
inline detail::Program gale_dual_program(const Problem& g, const Vector& z, const Vector& y) {
  gale_detail::require_gale(g);
  std::size_t end = y.support_end();
  std::size_t m = std::max<std::size_t>(1, end == 0 ? 0 : end - 1);
  detail::Program pr;
  pr.system = lp::LinearSystem(2);
  pr.system.add({-1, 0}, lp::Relation::ge, y.at(0) - 1);
  for (std::size_t i = 1; i <= m; ++i) pr.system.add({-Rational(Integer(i)), -1}, lp::Relation::ge, y.at(i));
  pr.system.add({-1, 0}, lp::Relation::ge, 0);
  pr.system.add({-Rational(Integer(m + 1)), -1}, lp::Relation::ge, 0);
  pr.objective = {g.b()[0] + z[0], g.b()[1] + z[1]};
  pr.sense = lp::Sense::maximize;
  pr.keep = 2;
  return pr;
}

inline bool gale_dom_vD(const Problem& g, const Vector& z) {
  gale_detail::require_gale(g);
  g.check_z(z);
  Rational first = z[0] + g.alpha();
  Rational second = z[1] + g.beta();
  return first >= second && second >= 0;
}

/// 0 on dom v_D (attained at w = 0), +inf elsewhere.
inline ExtendedValue gale_vD(const Problem& g, const Vector& z) {
  ExtendedValue ev;
  if (gale_dom_vD(g, z)) {
    ev.value = 0;
    ev.attained = true;
    ev.witness = gale_detail::dense2(0, 0);
  } else {
    ev.value = Extended::pos_inf();
  }
  return ev;
}

/// H = {(t_1 - alpha, -beta, t_1 + t_2) : t >= 0}
///   u {(t_1 + t_2 - alpha, t_2 - beta, t_3) : t_1, t_3 >= 0, t_2 > 0}.
inline bool gale_member_H(const Problem& g, const SetPoint& pt) {
  gale_detail::require_gale(g);
  g.check_z(pt.base);
  const Rational& r = pt.height;
  Rational t1 = pt.base[0] + g.alpha();
  if (pt.base[1] == -g.beta() && t1 >= 0 && r >= t1) return true;
  Rational t2 = pt.base[1] + g.beta();
  return t2 > 0 && t1 - t2 >= 0 && r >= 0;
}

/// The closure of H, {(t_1 + t_2 - alpha, t_2 - beta, t_3) : t >= 0}.
inline bool gale_member_closure_H(const Problem& g, const SetPoint& pt) {
  gale_detail::require_gale(g);
  g.check_z(pt.base);
  Rational t2 = pt.base[1] + g.beta();
  Rational t1 = pt.base[0] + g.alpha() - t2;
  return t2 >= 0 && t1 >= 0 && pt.height >= 0;
}

/// epi v_D.
inline bool gale_member_N(const Problem& g, const SetPoint& pt) {
  return gale_dom_vD(g, pt.base) && pt.height >= 0;
}

/// The canonical point (1 - alpha, -beta, 1/2) of N outside H.
inline SetPoint gale_gap_witness(const Problem& g) {
  gale_detail::require_gale(g);
  return {gale_detail::dense2(1 - g.alpha(), -g.beta()), make_rational(1, 2)};
}

/// sup of <z', wz> + wr r' over (z', r') in H, from the two branches.
inline Extended gale_sup_over_H(const Problem& g, const Vector& wz, const Rational& wr) {
  gale_detail::require_gale(g);
  Rational constant = -wz[0] * g.alpha() - wz[1] * g.beta();
  // Branch 1 over (t_1, t_2, r'): r' >= t_1 + t_2.
  lp::LinearSystem s1(3);
  s1.add({1, 0, 0}, lp::Relation::ge, 0);
  s1.add({0, 1, 0}, lp::Relation::ge, 0);
  s1.add({-1, -1, 1}, lp::Relation::ge, 0);
  Extended v1 = lp::fm_optimize({wz[0], 0, wr}, s1, lp::Sense::maximize).value;
  // Branch 2 over (t_1, t_2, t_3, r'): t_2 > 0, r' >= t_3.
  lp::LinearSystem s2(4);
  s2.add({1, 0, 0, 0}, lp::Relation::ge, 0);
  s2.add({0, 1, 0, 0}, lp::Relation::gt, 0);
  s2.add({0, 0, 1, 0}, lp::Relation::ge, 0);
  s2.add({0, 0, -1, 1}, lp::Relation::ge, 0);
  Extended v2 = lp::fm_optimize({wz[0], wz[0] + wz[1], 0, wr}, s2, lp::Sense::maximize).value;
  return detail::shift(std::max(v1, v2), constant);
}

/// val(P) in closed form:
///   alpha                 if beta = 0 <= alpha   (x_0 = alpha)
///   0                     if alpha >= beta > 0   (two-point support)
///   +inf                  otherwise (infeasible).
inline ExtendedValue gale_primal_closed_form(const Rational& alpha, const Rational& beta) {
  ExtendedValue ev;
  if (beta == 0 && alpha >= 0) {
    ev.value = alpha;
    ev.attained = true;
    ev.witness = Vector::finite_support({{0, alpha}});
  } else if (beta > 0 && alpha >= beta) {
    ev.value = 0;
    ev.attained = true;
    ev.witness = Vector::finite_support(gale_detail::two_point_mix(alpha, beta));
  } else {
    ev.value = Extended::pos_inf();
  }
  return ev;
}

/// Closed-form values of the unperturbed pair.
inline DualityReport gale_values(const Problem& g) {
  gale_detail::require_gale(g);
  DualityReport rep;
  rep.primal = gale_primal_closed_form(g.alpha(), g.beta());
  rep.dual = gale_vD(g, g.zero_z());
  rep.gap = gap_between(rep.primal.value, rep.dual.value);
  rep.slice_nonempty = rep.primal.value < Extended::pos_inf();
  rep.consistent = true;  // w = 0 is always dual feasible
  rep.slice_condition = !rep.dual.is_finite() || gale_member_H(g, {g.zero_z(), rep.dual.value.value()});
  bool left = rep.slice_nonempty && rep.slice_condition;
  bool right = rep.primal.attained && rep.gap.kind == GapKind::zero;
  rep.biconditional = left == right;
  return rep;
}

/// The finite LP on x_0..x_n with the same two equality rows, Q = {0} in
/// R^2 and P = R^{n+1}_+.
inline Problem gale_truncate(const Problem& g, std::size_t n) {
  gale_detail::require_gale(g);
  if (n < 1) throw PreconditionError("gale_truncate: n must be at least 1");
  std::vector<Rational> first(n + 1), second(n + 1);
  first[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    first[i] = Rational(Integer(i));
    second[i] = 1;
  }
  std::vector<Rational> c(n + 1);
  c[0] = 1;
  return Problem::finite(LinearMap::matrix({Vector::dense(first), Vector::dense(second)}, n + 1), g.b(),
                         Vector::dense(c), Cone::orthant(n + 1), Cone::zero(2));
}

}  // namespace conicdual
