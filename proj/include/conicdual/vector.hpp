#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "conicdual/error.hpp"
#include "conicdual/rational.hpp"

namespace conicdual {

/// An element of one of the spaces X, Y, Z, W.
///
/// Three shapes exist:
///  - dense:           a coordinate list of fixed dimension n;
///  - finite_support:  a real sequence with finitely many nonzero terms,
///                     stored as index -> value with no explicit zeros;
///  - affine_sequence: a sequence in R^N whose terms follow
///                     entry(0) = head, entry(i) = slope * i + offset (i >= 1),
///                     plus finitely many corrections. Never materialized.
///
/// Dense and sequence shapes never mix implicitly. A sequence with a zero
/// affine tail is always stored as finite_support, so equality of canonical
/// forms is equality of sequences.
class Vector {
 public:
  enum class Shape { dense, finite_support, affine_sequence };
  using Support = std::map<std::size_t, Rational>;

  Vector() = default;

  static Vector dense(std::vector<Rational> entries) {
    Vector v;
    v.shape_ = Shape::dense;
    v.dense_ = std::move(entries);
    return v;
  }

  static Vector zeros(std::size_t n) { return dense(std::vector<Rational>(n)); }

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v = zeros(n);
    v.dense_.at(i) = 1;
    return v;
  }

  static Vector finite_support(Support entries = {}) {
    Vector v;
    v.shape_ = Shape::finite_support;
    for (auto& [i, q] : entries)
      if (q != 0) v.support_.emplace(i, std::move(q));
    return v;
  }

  static Vector affine_sequence(Rational head, Rational slope, Rational offset, Support corrections = {}) {
    if (slope == 0 && offset == 0) {
      corrections[0] += head;
      return finite_support(std::move(corrections));
    }
    Vector v;
    v.shape_ = Shape::affine_sequence;
    v.head_ = std::move(head);
    v.slope_ = std::move(slope);
    v.offset_ = std::move(offset);
    for (auto& [i, q] : corrections) {
      if (i == 0)
        v.head_ += q;
      else if (q != 0)
        v.support_.emplace(i, std::move(q));
    }
    return v;
  }

  Shape shape() const noexcept { return shape_; }
  bool is_dense() const noexcept { return shape_ == Shape::dense; }
  bool is_sequence() const noexcept { return shape_ != Shape::dense; }

  std::size_t dimension() const {
    if (!is_dense()) throw ShapeError("dimension() of a sequence-shaped vector");
    return dense_.size();
  }

  const std::vector<Rational>& entries() const {
    if (!is_dense()) throw ShapeError("entries() of a sequence-shaped vector");
    return dense_;
  }

  /// Nonzero entries of a finite-support vector, or the corrections of an
  /// affine sequence.
  const Support& support() const {
    if (is_dense()) throw ShapeError("support() of a dense vector");
    return support_;
  }

  const Rational& head() const { return head_; }
  const Rational& slope() const { return slope_; }
  const Rational& offset() const { return offset_; }

  Rational at(std::size_t i) const {
    switch (shape_) {
      case Shape::dense:
        if (i >= dense_.size()) throw ShapeError("index " + std::to_string(i) + " out of range");
        return dense_[i];
      case Shape::finite_support: {
        auto it = support_.find(i);
        return it == support_.end() ? Rational(0) : it->second;
      }
      case Shape::affine_sequence: {
        Rational base = i == 0 ? head_ : Rational(slope_ * Rational(Integer(i)) + offset_);
        auto it = support_.find(i);
        return it == support_.end() ? base : Rational(base + it->second);
      }
    }
    return 0;
  }
  Rational operator[](std::size_t i) const { return at(i); }

  /// One past the largest index that may hold a nonzero (finite shapes only).
  std::size_t support_end() const {
    if (is_dense()) return dense_.size();
    if (shape_ == Shape::affine_sequence) throw ShapeError("affine sequence has unbounded support");
    return support_.empty() ? 0 : support_.rbegin()->first + 1;
  }

  bool is_zero() const {
    if (is_dense()) return std::all_of(dense_.begin(), dense_.end(), [](const Rational& q) { return q == 0; });
    return shape_ == Shape::finite_support && support_.empty();
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    if (a.shape_ != b.shape_) return false;
    switch (a.shape_) {
      case Shape::dense:
        return a.dense_ == b.dense_;
      case Shape::finite_support:
        return a.support_ == b.support_;
      case Shape::affine_sequence:
        return a.head_ == b.head_ && a.slope_ == b.slope_ && a.offset_ == b.offset_ && a.support_ == b.support_;
    }
    return false;
  }

  friend Vector operator*(const Rational& s, const Vector& v) {
    switch (v.shape_) {
      case Shape::dense: {
        std::vector<Rational> out(v.dense_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * v.dense_[i];
        return dense(std::move(out));
      }
      case Shape::finite_support: {
        Support out;
        for (const auto& [i, q] : v.support_) out.emplace(i, s * q);
        return finite_support(std::move(out));
      }
      case Shape::affine_sequence: {
        Support out;
        for (const auto& [i, q] : v.support_) out.emplace(i, s * q);
        return affine_sequence(s * v.head_, s * v.slope_, s * v.offset_, std::move(out));
      }
    }
    return v;
  }

  friend Vector operator+(const Vector& a, const Vector& b) {
    if (a.is_dense() != b.is_dense()) throw ShapeError("cannot add dense and sequence vectors");
    if (a.is_dense()) {
      if (a.dense_.size() != b.dense_.size())
        throw ShapeError("dimension mismatch: " + std::to_string(a.dense_.size()) + " vs " +
                         std::to_string(b.dense_.size()));
      std::vector<Rational> out(a.dense_.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.dense_[i] + b.dense_[i];
      return dense(std::move(out));
    }
    Support corr = a.support_;
    for (const auto& [i, q] : b.support_) corr[i] += q;
    if (a.shape_ == Shape::finite_support && b.shape_ == Shape::finite_support)
      return finite_support(std::move(corr));
    // An affine operand contributes its head at index 0 and its tail elsewhere.
    Rational head = a.shape_ == Shape::affine_sequence ? a.head_ : Rational(0);
    if (b.shape_ == Shape::affine_sequence) head += b.head_;
    return affine_sequence(head, a.slope_ + b.slope_, a.offset_ + b.offset_, std::move(corr));
  }

  friend Vector operator-(const Vector& v) { return Rational(-1) * v; }
  friend Vector operator-(const Vector& a, const Vector& b) { return a + (-b); }

  friend std::ostream& operator<<(std::ostream& os, const Vector& v) { return os << v.str(); }

  std::string str() const {
    std::string s;
    switch (shape_) {
      case Shape::dense:
        s = "(";
        for (std::size_t i = 0; i < dense_.size(); ++i) s += (i ? ", " : "") + to_string(dense_[i]);
        return s + ")";
      case Shape::finite_support:
        s = "{";
        for (auto it = support_.begin(); it != support_.end(); ++it)
          s += (it == support_.begin() ? "" : ", ") + std::to_string(it->first) + ": " + to_string(it->second);
        return s + "}";
      case Shape::affine_sequence:
        s = "[0 -> " + to_string(head_) + "; i -> " + to_string(slope_) + "*i + " + to_string(offset_);
        for (const auto& [i, q] : support_) s += "; +" + to_string(q) + "@" + std::to_string(i);
        return s + "]";
    }
    return s;
  }

 private:
  Shape shape_ = Shape::dense;
  std::vector<Rational> dense_;
  Support support_;
  Rational head_, slope_, offset_;
};

/// Exact bilinear pairing sum_i x_i y_i.
///
/// dense/dense requires equal dimensions; a finite-support vector pairs with
/// any sequence. Two sequences that both have unbounded support cannot be
/// paired.
inline Rational pair(const Vector& x, const Vector& y) {
  if (x.is_dense() || y.is_dense()) {
    if (!(x.is_dense() && y.is_dense())) throw ShapeError("pairing a dense vector with a sequence");
    const auto& a = x.entries();
    const auto& b = y.entries();
    if (a.size() != b.size())
      throw ShapeError("pairing dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  const Vector* finite = &x;
  const Vector* other = &y;
  if (x.shape() != Vector::Shape::finite_support) std::swap(finite, other);
  if (finite->shape() != Vector::Shape::finite_support)
    throw ShapeError("pairing two sequences with unbounded support");
  Rational s = 0;
  for (const auto& [i, q] : finite->support()) s += q * other->at(i);
  return s;
}

/// Concatenation of dense vectors (coordinates of a product space).
inline Vector concat(const Vector& a, const Vector& b) {
  std::vector<Rational> out = a.entries();
  out.insert(out.end(), b.entries().begin(), b.entries().end());
  return Vector::dense(std::move(out));
}

}  // namespace conicdual
