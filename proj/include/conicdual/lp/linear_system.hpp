#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "conicdual/error.hpp"
#include "conicdual/rational.hpp"

namespace conicdual::lp {

enum class Relation { ge, gt, eq };
enum class Sense { minimize, maximize };

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::ge:
      return ">=";
    case Relation::gt:
      return ">";
    case Relation::eq:
      return "=";
  }
  return "?";
}

/// normal . x  (rel)  rhs
struct Constraint {
  std::vector<Rational> normal;
  Relation rel = Relation::ge;
  Rational rhs;

  bool satisfied_by(const std::vector<Rational>& x) const {
    Rational lhs = 0;
    for (std::size_t i = 0; i < normal.size(); ++i)
      if (normal[i] != 0) lhs += normal[i] * x[i];
    switch (rel) {
      case Relation::ge:
        return lhs >= rhs;
      case Relation::gt:
        return lhs > rhs;
      case Relation::eq:
        return lhs == rhs;
    }
    return false;
  }
};

/// A finite system of linear constraints over n rational variables.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t n = 0) : n_(n) {}

  std::size_t variables() const noexcept { return n_; }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  void add(std::vector<Rational> normal, Relation rel, Rational rhs) {
    if (normal.size() != n_)
      throw ShapeError("constraint normal has " + std::to_string(normal.size()) + " entries, system has " +
                       std::to_string(n_) + " variables");
    rows_.push_back({std::move(normal), rel, std::move(rhs)});
  }
  void add(Constraint c) { add(std::move(c.normal), c.rel, std::move(c.rhs)); }

  bool has_strict() const {
    for (const auto& c : rows_)
      if (c.rel == Relation::gt) return true;
    return false;
  }

  bool satisfied_by(const std::vector<Rational>& x) const {
    if (x.size() != n_) throw ShapeError("point dimension does not match the system");
    for (const auto& c : rows_)
      if (!c.satisfied_by(x)) return false;
    return true;
  }

  /// Human-readable inequality listing, one constraint per line.
  std::string str() const {
    std::string out;
    for (const auto& c : rows_) {
      std::string lhs;
      for (std::size_t i = 0; i < n_; ++i) {
        const Rational& a = c.normal[i];
        if (a == 0) continue;
        bool neg = a < 0;
        Rational mag = neg ? Rational(-a) : a;
        if (lhs.empty())
          lhs += neg ? "-" : "";
        else
          lhs += neg ? " - " : " + ";
        if (mag != 1) lhs += to_string(mag) + " ";
        lhs += "x" + std::to_string(i);
      }
      if (lhs.empty()) lhs = "0";
      out += lhs + " " + relation_symbol(c.rel) + " " + to_string(c.rhs) + "\n";
    }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Constraint> rows_;
};

/// Sparse affine expression sum_i coeff_i x_i + constant, used to assemble
/// systems whose variable count grows while constraints are added.
struct AffineForm {
  std::map<std::size_t, Rational> coeffs;
  Rational constant;

  static AffineForm variable(std::size_t i, Rational coeff = 1) {
    AffineForm f;
    f.coeffs[i] = std::move(coeff);
    return f;
  }
  static AffineForm constant_of(Rational c) {
    AffineForm f;
    f.constant = std::move(c);
    return f;
  }

  AffineForm& add_term(std::size_t i, const Rational& coeff) {
    if (coeff != 0) coeffs[i] += coeff;
    return *this;
  }
  AffineForm& operator+=(const AffineForm& o) {
    for (const auto& [i, q] : o.coeffs) coeffs[i] += q;
    constant += o.constant;
    return *this;
  }
  AffineForm& operator*=(const Rational& s) {
    for (auto& [i, q] : coeffs) q *= s;
    constant *= s;
    return *this;
  }
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator*(const Rational& s, AffineForm a) { return a *= s; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a += Rational(-1) * b; }
};

/// Incrementally assembles a LinearSystem. Variables may be added at any
/// time; earlier constraints are padded with zero coefficients.
class SystemBuilder {
 public:
  std::size_t add_variables(std::size_t k) {
    std::size_t first = n_;
    n_ += k;
    return first;
  }
  std::size_t variables() const noexcept { return n_; }

  /// lhs (rel) 0, with lhs affine.
  void add(const AffineForm& lhs, Relation rel) {
    for (const auto& [i, q] : lhs.coeffs)
      if (i >= n_) throw ShapeError("affine form references an unknown variable");
    rows_.push_back({lhs, rel});
  }

  LinearSystem build() const {
    LinearSystem s(n_);
    for (const auto& [f, rel] : rows_) {
      std::vector<Rational> normal(n_);
      for (const auto& [i, q] : f.coeffs) normal[i] += q;
      s.add(std::move(normal), rel, -f.constant);
    }
    return s;
  }

  /// Objective vector over all current variables from a linear form.
  std::vector<Rational> objective(const AffineForm& f) const {
    std::vector<Rational> c(n_);
    for (const auto& [i, q] : f.coeffs) c.at(i) += q;
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<AffineForm, Relation>> rows_;
};

}  // namespace conicdual::lp
