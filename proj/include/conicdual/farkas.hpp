#pragma once

#include <optional>

#include "conicdual/perturb.hpp"
#include "conicdual/values.hpp"

namespace conicdual {

/// Outcome of one perturbed Farkas alternative at level alpha.
///
/// farkas1 (z, alpha):  (a) every dual feasible w has <b + z, w> <= alpha
///                      (b) some x in P with Ax - b - z in Q has <x, c> <= alpha
///   a_failure = dual w with <b + z, w> > alpha,  b_witness = primal x.
/// farkas2 (y, alpha):  (a) every primal feasible x has <x, c - y> >= alpha
///                      (b) some w in Q* with c - A*w - y in P* has <b, w> >= alpha
///   a_failure = primal x with <x, c - y> < alpha,  b_witness = dual w.
/// (b) implies (a) unconditionally; the converse is the slice condition.
struct FarkasVerdict {
  bool a_holds = false;
  bool b_holds = false;
  bool equivalent = false;
  std::optional<Vector> a_failure;
  std::optional<Vector> b_witness;
};

inline FarkasVerdict farkas1(const Problem& p, const Vector& z, const Rational& alpha) {
  FarkasVerdict v;
  v.a_holds = v_D(p, z).value <= Extended(alpha);
  if (!v.a_holds) {
    v.a_failure = dual_point_above(p, z, p.zero_y(), alpha, true);
    if (!v.a_failure) throw InternalInconsistency("farkas1: v_D above alpha without a dual point");
  }
  v.b_holds = member_H(p, {z, alpha});
  if (v.b_holds) {
    v.b_witness = primal_point_below(p, z, p.zero_y(), alpha, false);
    if (!v.b_witness) throw InternalInconsistency("farkas1: H member without a primal point");
  }
  v.equivalent = v.a_holds == v.b_holds;
  return v;
}

inline FarkasVerdict farkas2(const Problem& p, const Vector& y, const Rational& alpha) {
  FarkasVerdict v;
  v.a_holds = v_P(p, y).value >= Extended(alpha);
  if (!v.a_holds) {
    v.a_failure = primal_point_below(p, p.zero_z(), y, alpha, true);
    if (!v.a_failure) throw InternalInconsistency("farkas2: v_P below alpha without a primal point");
  }
  v.b_holds = member_K(p, {y, alpha});
  if (v.b_holds) {
    v.b_witness = dual_point_above(p, p.zero_z(), y, alpha, false);
    if (!v.b_witness) throw InternalInconsistency("farkas2: K member without a dual point");
  }
  v.equivalent = v.a_holds == v.b_holds;
  return v;
}

/// min{<x, c> : Ax - b - z in Q, x in P} against sup{<b + z, w> : w in F(D)}.
/// Under dual consistency: (H slice nonempty and equal to the N slice) iff
/// (the primal minimum is attained and equals the dual supremum).
inline DualityReport strong_duality1(const Problem& p, const Vector& z) {
  DualityReport rep;
  rep.primal = primal_value(p, z, p.zero_y());
  rep.dual = v_D(p, z);
  rep.gap = gap_between(rep.primal.value, rep.dual.value);
  SliceReport s = slice_equal_H_N(p, z);
  rep.slice_condition = s.equal;
  rep.slice_nonempty = s.nonempty;
  rep.consistent = rep.dual.value > Extended::neg_inf();
  if (rep.consistent)
    rep.biconditional =
        (rep.slice_nonempty && rep.slice_condition) == (rep.primal.attained && rep.gap.kind == GapKind::zero);
  return rep;
}

/// max{<b, w> : c - y - A*w in P*, w in Q*} against inf{<x, c - y> : x in F(P)}.
/// Under primal consistency: (K slice nonempty and equal to the M slice)
/// iff (the dual maximum is attained and equals the primal infimum).
inline DualityReport strong_duality2(const Problem& p, const Vector& y) {
  DualityReport rep;
  rep.primal = v_P(p, y);
  rep.dual = dual_value(p, p.zero_z(), y);
  rep.gap = gap_between(rep.primal.value, rep.dual.value);
  SliceReport s = slice_equal_K_M(p, y);
  rep.slice_condition = s.equal;
  rep.slice_nonempty = s.nonempty;
  rep.consistent = rep.primal.value < Extended::pos_inf();
  if (rep.consistent)
    rep.biconditional =
        (rep.slice_nonempty && rep.slice_condition) == (rep.dual.attained && rep.gap.kind == GapKind::zero);
  return rep;
}

}  // namespace conicdual
