#pragma once

#include <optional>
#include <string>

#include "conicdual/error.hpp"
#include "conicdual/extended.hpp"
#include "conicdual/vector.hpp"

namespace conicdual {

/// An optimal value in [-inf, +inf] with its evidence.
///
/// attained => witness is an optimal point. An infinite value reached by
/// unboundedness carries a feasible point and an improving ray.
struct ExtendedValue {
  Extended value;
  bool attained = false;
  std::optional<Vector> witness;
  std::optional<Vector> feasible_point;
  std::optional<Vector> ray;

  bool is_finite() const noexcept { return value.is_finite(); }
};

/// A pair (z, r) of Z x R or (y, r) of Y x R.
struct SetPoint {
  Vector base;
  Rational height;

  std::string str() const { return "(" + base.str() + ", " + to_string(height) + ")"; }
};

enum class GapKind { zero, positive, infinite };

inline const char* gap_name(GapKind g) {
  switch (g) {
    case GapKind::zero:
      return "zero";
    case GapKind::positive:
      return "positive";
    case GapKind::infinite:
      return "infinite";
  }
  return "?";
}

struct Gap {
  GapKind kind = GapKind::zero;
  Rational amount;  // positive gaps only

  std::string str() const { return kind == GapKind::positive ? to_string(amount) : gap_name(kind); }
};

/// primal - dual in the extended order. Equal infinities count as no gap.
inline Gap gap_between(const Extended& primal, const Extended& dual) {
  if (primal < dual)
    throw InternalInconsistency("primal value " + primal.str() + " below dual value " + dual.str());
  if (primal.is_finite() && dual.is_finite()) {
    Rational d = primal.value() - dual.value();
    return d == 0 ? Gap{} : Gap{GapKind::positive, d};
  }
  if (primal == dual) return Gap{};
  return Gap{GapKind::infinite, 0};
}

/// Values of a (possibly perturbed) primal/dual pair.
///
/// slice_nonempty: the relevant slice of H (or K) is nonempty, i.e. the
/// perturbed primal (resp. dual) is feasible. consistent: the opposite
/// problem is feasible, the standing assumption under which the
/// slice/attainment biconditional is asserted; `biconditional` is empty
/// when that assumption fails.
struct DualityReport {
  ExtendedValue primal;
  ExtendedValue dual;
  Gap gap;
  bool slice_condition = false;
  bool slice_nonempty = false;
  bool consistent = true;
  std::optional<bool> biconditional;
};

}  // namespace conicdual
