#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "conicdual/cone.hpp"
#include "conicdual/error.hpp"
#include "conicdual/linear_map.hpp"
#include "conicdual/vector.hpp"

namespace conicdual {

/// The datum of the pair
///   (P)  min <x, c>   s.t.  A x - b in Q,  x in P
///   (D)  max <b, w>   s.t.  c - A* w in P*,  w in Q*
///
/// kind finite:  X = Y = R^n, Z = W = R^m, P and Q polyhedral.
/// kind gale:    X = R^(N), Y = R^N, Z = W = R^2, A the Gale operator,
///               P = R_+^(N), Q = {0}, b = (alpha, beta), c = e_0.
///
/// Dual cones are computed (and, for inequality forms, certified) once at
/// construction.
class Problem {
 public:
  enum class Kind { finite, gale };

  static Problem finite(LinearMap a, Vector b, Vector c, Cone p, Cone q) {
    if (a.form() != LinearMap::Form::matrix) throw ValidationError("A", "finite problems need a matrix");
    const std::size_t n = a.col_count();
    const std::size_t m = a.row_count();
    if (!b.is_dense() || b.dimension() != m)
      throw ValidationError("b", "expected " + std::to_string(m) + " entries (rows of A), got " + describe(b));
    if (!c.is_dense() || c.dimension() != n)
      throw ValidationError("c", "expected " + std::to_string(n) + " entries (columns of A), got " + describe(c));
    if (p.is_sequence() || p.dimension() != n)
      throw ValidationError("P", "cone must live in R^" + std::to_string(n));
    if (q.is_sequence() || q.dimension() != m)
      throw ValidationError("Q", "cone must live in R^" + std::to_string(m));
    Problem pr;
    pr.kind_ = Kind::finite;
    pr.a_ = std::move(a);
    pr.b_ = std::move(b);
    pr.c_ = std::move(c);
    pr.p_ = std::move(p);
    pr.q_ = std::move(q);
    pr.p_dual_ = dual_cone(pr.p_);
    pr.q_dual_ = dual_cone(pr.q_);
    return pr;
  }

  static Problem gale(Rational alpha, Rational beta) {
    Problem pr;
    pr.kind_ = Kind::gale;
    pr.a_ = LinearMap::gale_operator();
    pr.b_ = Vector::dense({alpha, beta});
    pr.c_ = Vector::finite_support({{0, Rational(1)}});
    pr.p_ = Cone::sequence_orthant();
    pr.q_ = Cone::zero(2);
    pr.p_dual_ = Cone::sequence_dual_orthant();
    pr.q_dual_ = Cone::full(2);
    pr.alpha_ = std::move(alpha);
    pr.beta_ = std::move(beta);
    return pr;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_gale() const noexcept { return kind_ == Kind::gale; }

  const LinearMap& A() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  const Vector& c() const noexcept { return c_; }
  const Cone& P() const noexcept { return p_; }
  const Cone& Q() const noexcept { return q_; }
  const Cone& P_dual() const noexcept { return p_dual_; }
  const Cone& Q_dual() const noexcept { return q_dual_; }

  const Rational& alpha() const {
    require_gale();
    return alpha_;
  }
  const Rational& beta() const {
    require_gale();
    return beta_;
  }

  /// dim X (finite kind only).
  std::size_t x_dim() const {
    if (is_gale()) throw UnsupportedError("X = R^(N) has no finite dimension");
    return a_.col_count();
  }
  /// dim Z = dim W.
  std::size_t z_dim() const { return a_.row_count(); }

  /// Z-shaped zero and Y-shaped zero.
  Vector zero_z() const { return Vector::zeros(z_dim()); }
  Vector zero_y() const { return is_gale() ? Vector::finite_support() : Vector::zeros(x_dim()); }

  void check_z(const Vector& z) const {
    if (!z.is_dense() || z.dimension() != z_dim())
      throw ShapeError("perturbation z must be a dense vector of dimension " + std::to_string(z_dim()));
  }
  void check_y(const Vector& y) const {
    if (is_gale()) {
      if (y.shape() != Vector::Shape::finite_support)
        throw ShapeError("gale problems accept only finitely supported perturbations y");
      return;
    }
    if (!y.is_dense() || y.dimension() != x_dim())
      throw ShapeError("perturbation y must be a dense vector of dimension " + std::to_string(x_dim()));
  }

  friend bool operator==(const Problem& l, const Problem& r) {
    return l.kind_ == r.kind_ && l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_ && l.p_ == r.p_ && l.q_ == r.q_;
  }

 private:
  static std::string describe(const Vector& v) {
    return v.is_dense() ? std::to_string(v.dimension()) : std::string("a sequence");
  }
  void require_gale() const {
    if (!is_gale()) throw UnsupportedError("alpha/beta exist only for gale problems");
  }

  Kind kind_ = Kind::finite;
  LinearMap a_;
  Vector b_, c_;
  Cone p_, q_, p_dual_, q_dual_;
  Rational alpha_, beta_;
};

}  // namespace conicdual
