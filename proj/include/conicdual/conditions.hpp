#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "conicdual/cone.hpp"
#include "conicdual/perturb.hpp"

namespace conicdual {

enum class Tri { yes, no, undetermined };
enum class Justification { polyhedral_closedness, core_condition, analytic_gale, sampled_only, inconsistent_side };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes:
      return "true";
    case Tri::no:
      return "false";
    case Tri::undetermined:
      return "undetermined";
  }
  return "?";
}

inline const char* justification_name(Justification j) {
  switch (j) {
    case Justification::polyhedral_closedness:
      return "polyhedral-closedness";
    case Justification::core_condition:
      return "core-condition";
    case Justification::analytic_gale:
      return "analytic-gale";
    case Justification::sampled_only:
      return "sampled-only";
    case Justification::inconsistent_side:
      return "inconsistent-side";
  }
  return "?";
}

/// Verdict on H = N (or K = M). A "no" always carries a witness of N \ H
/// (resp. M \ K). Sampled slice checks are reported alongside.
struct ConditionVerdict {
  Tri holds = Tri::undetermined;
  Justification justification = Justification::sampled_only;
  std::optional<SetPoint> witness;
  std::size_t samples = 0;
  std::vector<Vector> violations;  // perturbations whose slices differ
};

/// Deterministic perturbation sampler for a finite problem. A third of the
/// samples are uniform; the rest are pushed into dom v_D (resp. dom v_P) by
/// construction, half of those onto boundary rays.
class PerturbationSampler {
 public:
  PerturbationSampler(const Problem& p, std::uint64_t seed) : p_(p), gen_(seed) {
    if (!p.is_finite()) throw UnsupportedError("perturbation sampling needs a finite problem");
  }

  Vector next_z() {
    switch (k_z_++ % 3) {
      case 0:
        return random_dense(p_.z_dim());
      case 1:
        return p_.A().apply(combo(gens(p_.P(), p_gens_), p_.x_dim(), false)) - p_.b() -
               combo(gens(p_.Q(), q_gens_), p_.z_dim(), false);
      default:
        return p_.A().apply(combo(gens(p_.P(), p_gens_), p_.x_dim(), true)) - p_.b();
    }
  }

  Vector next_y() {
    switch (k_y_++ % 3) {
      case 0:
        return random_dense(p_.x_dim());
      case 1:
        return p_.c() - p_.A().adjoint_apply(combo(gens(p_.Q_dual(), qd_gens_), p_.z_dim(), false)) -
               combo(gens(p_.P_dual(), pd_gens_), p_.x_dim(), false);
      default:
        return p_.c() - p_.A().adjoint_apply(combo(gens(p_.Q_dual(), qd_gens_), p_.z_dim(), true));
    }
  }

  Rational rational(long range = 3, long max_den = 4) {
    long q = std::uniform_int_distribution<long>(1, max_den)(gen_);
    long num = std::uniform_int_distribution<long>(-range * q, range * q)(gen_);
    return make_rational(num, q);
  }

 private:
  using Gens = std::optional<cone_detail::Rows>;

  const cone_detail::Rows& gens(const Cone& c, Gens& cache) {
    if (!cache) cache = generators_of(c);
    return *cache;
  }

  Vector random_dense(std::size_t n) {
    std::vector<Rational> v(n);
    for (auto& q : v) q = rational();
    return Vector::dense(std::move(v));
  }

  /// Nonnegative combination of the generators; a single one when `ray`.
  Vector combo(const cone_detail::Rows& g, std::size_t n, bool ray) {
    std::vector<Rational> out(n);
    if (g.empty()) return Vector::dense(std::move(out));
    if (ray) {
      const auto& pick = g[std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(gen_)];
      Rational w = abs(rational(2, 3));
      for (std::size_t i = 0; i < n; ++i) out[i] = w * pick[i];
      return Vector::dense(std::move(out));
    }
    for (const auto& r : g) {
      if (std::bernoulli_distribution(0.3)(gen_)) continue;
      Rational w = abs(rational(2, 3));
      for (std::size_t i = 0; i < n; ++i) out[i] += w * r[i];
    }
    return Vector::dense(std::move(out));
  }

  const Problem& p_;
  std::mt19937_64 gen_;
  std::size_t k_z_ = 0, k_y_ = 0;
  Gens p_gens_, q_gens_, pd_gens_, qd_gens_;
};

namespace conditions_detail {

/// A nonzero point of the polyhedral cone {u in R^k : build(u)}, or
/// nothing when the cone is {0}. Probes +-u_i under the cap +-u_i <= 1.
template <class Build>
std::optional<Vector> nonzero_point(std::size_t k, Build build) {
  using lp::AffineForm;
  for (std::size_t i = 0; i < k; ++i) {
    for (int s : {1, -1}) {
      lp::SystemBuilder b;
      auto u = perturb_detail::vars(b.add_variables(k), k);
      build(b, u);
      AffineForm goal = Rational(s) * u[i];
      b.add(AffineForm::constant_of(1) - goal, lp::Relation::ge);
      detail::Program pr{b.build(), b.objective(goal), lp::Sense::maximize, k};
      ExtendedValue ev = detail::solve(pr);
      if (ev.value > Extended(0)) return ev.witness;
    }
  }
  return std::nullopt;
}

inline std::vector<lp::AffineForm> negated(std::vector<lp::AffineForm> v) {
  for (auto& f : v) f *= Rational(-1);
  return v;
}

}  // namespace conditions_detail

/// H = N. Finite problems with a feasible dual: H is the image of the
/// polyhedral cone P x Q x R_+ under an affine map, hence closed, hence
/// equal to N; the claim is cross-checked on sampled slices. Finite
/// problems with an infeasible dual have v_D = -inf, so N = Z x R and H = N
/// iff A(P) - Q = Z, i.e. iff no w != 0 has A*w in P* and -w in Q*; such a
/// w gives the point (-b - w, 0) of N \ H. Gale problems: never, with the
/// point (1 - alpha, -beta, 1/2) of N \ H.
inline ConditionVerdict check_condition_D(const Problem& p, std::uint64_t seed = 0, std::size_t samples = 100) {
  ConditionVerdict v;
  if (p.is_gale()) {
    v.holds = Tri::no;
    v.justification = Justification::analytic_gale;
    v.witness = gale_gap_witness(p);
  } else if (val_dual(p).value.is_neg_inf()) {
    v.justification = Justification::inconsistent_side;
    auto w = conditions_detail::nonzero_point(p.z_dim(), [&](lp::SystemBuilder& b, const auto& u) {
      constrain_member(b, p.P_dual(), perturb_detail::adjoint_image(p.A(), u));
      constrain_member(b, p.Q_dual(), conditions_detail::negated(u));
    });
    v.holds = w ? Tri::no : Tri::yes;
    if (w) v.witness = SetPoint{-p.b() - *w, Rational(0)};
  } else {
    v.holds = Tri::yes;
    v.justification = Justification::polyhedral_closedness;
  }
  if (v.witness && (!member_N(p, *v.witness) || member_H(p, *v.witness)))
    throw InternalInconsistency("check_condition_D: witness " + v.witness->str() + " does not lie in N \\ H");
  if (v.holds != Tri::yes) return v;
  PerturbationSampler s(p, seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Vector z = s.next_z();
    ++v.samples;
    if (!slice_equal_H_N(p, z).equal) v.violations.push_back(z);
  }
  return v;
}

/// K = M, finite problems only (mirror of check_condition_D). With an
/// infeasible primal, M = Y x R and K = M iff A*(Q*) + P* = Y, i.e. iff no
/// x != 0 lies in P with Ax in Q; such an x gives the point (c + x, 0) of
/// M \ K.
inline ConditionVerdict check_condition_Dstar(const Problem& p, std::uint64_t seed = 0, std::size_t samples = 100) {
  if (p.is_gale()) throw UnsupportedError("check_condition_Dstar: M of a gale problem ranges over R^N");
  ConditionVerdict v;
  if (val_primal(p).value.is_pos_inf()) {
    v.justification = Justification::inconsistent_side;
    auto x = conditions_detail::nonzero_point(p.x_dim(), [&](lp::SystemBuilder& b, const auto& u) {
      constrain_member(b, p.P(), u);
      constrain_member(b, p.Q(), perturb_detail::image(p.A(), u));
    });
    v.holds = x ? Tri::no : Tri::yes;
    if (x) {
      v.witness = SetPoint{p.c() + *x, Rational(0)};
      if (!member_M(p, *v.witness) || member_K(p, *v.witness))
        throw InternalInconsistency("check_condition_Dstar: witness " + v.witness->str() + " does not lie in M \\ K");
      return v;
    }
  } else {
    v.holds = Tri::yes;
    v.justification = Justification::polyhedral_closedness;
  }
  PerturbationSampler s(p, seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Vector y = s.next_y();
    ++v.samples;
    if (!slice_equal_K_M(p, y).equal) v.violations.push_back(y);
  }
  return v;
}

struct CoreCheck {
  bool holds = false;
  std::optional<Vector> witness;
  Extended optimum;  // of the strict-feasibility LP, capped at 1
};

/// Some w in Q* has c - A*w in the core of P*. Decided by
///   max t  s.t.  w in Q*,  <g, c - A*w> >= t for every nonzero generator g
///   of P,  t <= 1,
/// together with full dimensionality of P*.
inline CoreCheck check_core_dual_condition(const Problem& p) {
  using lp::AffineForm;
  if (!p.is_finite()) throw UnsupportedError("check_core_dual_condition: finite problems only");
  const std::size_t m = p.z_dim(), n = p.x_dim();
  lp::SystemBuilder b;
  auto w = perturb_detail::vars(b.add_variables(m), m);
  std::size_t t = b.add_variables(1);
  constrain_member(b, p.Q_dual(), w);
  auto aw = perturb_detail::adjoint_image(p.A(), w);
  for (const auto& g : cone_detail::dedup(generators_of(p.P()))) {
    AffineForm f = Rational(-1) * AffineForm::variable(t);
    for (std::size_t j = 0; j < n; ++j)
      if (g[j] != 0) f += g[j] * (AffineForm::constant_of(p.c()[j]) - aw[j]);
    b.add(f, lp::Relation::ge);
  }
  b.add(AffineForm::constant_of(1) - AffineForm::variable(t), lp::Relation::ge);
  detail::Program pr{b.build(), b.objective(AffineForm::variable(t)), lp::Sense::maximize, m};
  ExtendedValue ev = detail::solve(pr);
  CoreCheck out;
  out.optimum = ev.value;
  out.holds = ev.value > Extended(0) && full_dimensional(p.P_dual());
  if (out.holds) {
    out.witness = ev.witness;
    if (!core_member(p.P_dual(), p.c() - p.A().adjoint_apply(*out.witness)))
      throw InternalInconsistency("check_core_dual_condition: witness not in the core of P*");
  }
  return out;
}

/// Some x in P has Ax - b in the core of Q (mirror LP over the normals of Q).
inline CoreCheck check_core_primal_condition(const Problem& p) {
  using lp::AffineForm;
  if (!p.is_finite()) throw UnsupportedError("check_core_primal_condition: finite problems only");
  const std::size_t m = p.z_dim(), n = p.x_dim();
  lp::SystemBuilder b;
  auto x = perturb_detail::vars(b.add_variables(n), n);
  std::size_t t = b.add_variables(1);
  constrain_member(b, p.P(), x);
  auto ax = perturb_detail::image(p.A(), x);
  for (const auto& nv : cone_detail::dedup(inequalities_of(p.Q()))) {
    AffineForm f = Rational(-1) * AffineForm::variable(t);
    for (std::size_t i = 0; i < m; ++i)
      if (nv[i] != 0) f += nv[i] * (ax[i] + AffineForm::constant_of(-p.b()[i]));
    b.add(f, lp::Relation::ge);
  }
  b.add(AffineForm::constant_of(1) - AffineForm::variable(t), lp::Relation::ge);
  detail::Program pr{b.build(), b.objective(AffineForm::variable(t)), lp::Sense::maximize, n};
  ExtendedValue ev = detail::solve(pr);
  CoreCheck out;
  out.optimum = ev.value;
  out.holds = ev.value > Extended(0) && full_dimensional(p.Q());
  if (out.holds) {
    out.witness = ev.witness;
    if (!core_member(p.Q(), p.A().apply(*out.witness) - p.b()))
      throw InternalInconsistency("check_core_primal_condition: witness not in the core of Q");
  }
  return out;
}

/// P** = P, by mutual inclusion.
inline bool check_bidual_embedding(const Problem& p) {
  if (!p.is_finite()) throw UnsupportedError("check_bidual_embedding: finite problems only");
  return cone_equal(bidual_cone(p.P()), p.P());
}

struct SufficiencyReport {
  std::vector<std::pair<const char*, bool>> premises;
  bool conclusion_checked = false;
  std::size_t samples = 0;
  std::vector<Vector> violations;
};

/// If some w in Q* has c - A*w in core P* and P** = P, then H = N. When
/// both premises hold the conclusion is checked on sampled slices; any
/// violation indicates an engine bug.
inline SufficiencyReport verify_dual_core_sufficiency(const Problem& p, std::uint64_t seed = 0,
                                                      std::size_t samples = 100) {
  SufficiencyReport r;
  bool core = check_core_dual_condition(p).holds;
  bool bidual = check_bidual_embedding(p);
  r.premises = {{"core_dual_condition", core}, {"bidual_embedding", bidual}};
  if (!(core && bidual)) return r;
  r.conclusion_checked = true;
  PerturbationSampler s(p, seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Vector z = s.next_z();
    ++r.samples;
    if (!slice_equal_H_N(p, z).equal) r.violations.push_back(z);
  }
  return r;
}

/// If some x in P has Ax - b in core Q, then K = M (sampled check).
inline SufficiencyReport verify_primal_core_sufficiency(const Problem& p, std::uint64_t seed = 0,
                                                        std::size_t samples = 100) {
  SufficiencyReport r;
  bool core = check_core_primal_condition(p).holds;
  r.premises = {{"core_primal_condition", core}};
  if (!core) return r;
  r.conclusion_checked = true;
  PerturbationSampler s(p, seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Vector y = s.next_y();
    ++r.samples;
    if (!slice_equal_K_M(p, y).equal) r.violations.push_back(y);
  }
  return r;
}

}  // namespace conicdual
