#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conicdual/cone.hpp"
#include "conicdual/lp/linear_system.hpp"
#include "conicdual/rational.hpp"
#include "conicdual/vector.hpp"

namespace testing_support {

using conicdual::Rational;
using conicdual::Vector;

/// Seeded source of small exact rationals for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  /// p/q with |p| <= range * q and q in [1, max_den].
  Rational rational(long range = 3, long max_den = 4) {
    long q = integer(1, max_den);
    long p = integer(-range * q, range * q);
    return conicdual::make_rational(p, q);
  }

  std::vector<Rational> rationals(std::size_t n, long range = 3, long max_den = 4) {
    std::vector<Rational> v(n);
    for (auto& q : v) q = rational(range, max_den);
    return v;
  }

  Vector dense(std::size_t n, long range = 3, long max_den = 4) { return Vector::dense(rationals(n, range, max_den)); }

  /// Small-integer vector, zero with probability p_zero per entry.
  std::vector<Rational> small_ints(std::size_t n, long range = 3, double p_zero = 0.3) {
    std::vector<Rational> v(n);
    for (auto& q : v) q = coin(p_zero) ? 0 : integer(-range, range);
    return v;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Random system of >= rows with integer data.
inline conicdual::lp::LinearSystem random_ge_system(Rng& rng, std::size_t n, std::size_t m, long range = 3) {
  conicdual::lp::LinearSystem s(n);
  for (std::size_t i = 0; i < m; ++i) s.add(rng.small_ints(n, range), conicdual::lp::Relation::ge, rng.integer(-range, range));
  return s;
}

/// Random finite-dimensional cone of dimension n in any finite form.
inline conicdual::Cone random_cone(Rng& rng, std::size_t n, bool allow_product = true) {
  using conicdual::Cone;
  auto vectors = [&](std::size_t k) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < k; ++i) vs.push_back(Vector::dense(rng.small_ints(n, 2)));
    return vs;
  };
  long pick = rng.integer(0, allow_product && n >= 2 ? 6 : 5);
  switch (pick) {
    case 0:
      return Cone::orthant(n);
    case 1:
      return Cone::zero(n);
    case 2:
      return Cone::full(n);
    case 3:
    case 4:
      return Cone::generators(vectors(static_cast<std::size_t>(rng.integer(1, 4))), n);
    case 5:
      return Cone::inequalities(vectors(static_cast<std::size_t>(rng.integer(1, 4))), n);
    default: {
      std::size_t k = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n) - 1));
      return Cone::product({random_cone(rng, k, false), random_cone(rng, n - k, false)});
    }
  }
}

/// A member of C built from its generators with random nonnegative weights.
inline Vector random_member(Rng& rng, const conicdual::Cone& c) {
  std::vector<Rational> x(c.dimension());
  for (const auto& g : conicdual::generators_of(c)) {
    if (rng.coin(0.3)) continue;
    Rational w = conicdual::abs(rng.rational(2, 3));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += w * g[i];
  }
  return Vector::dense(std::move(x));
}

}  // namespace testing_support
