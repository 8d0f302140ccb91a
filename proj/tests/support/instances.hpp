#pragma once

#include <vector>

#include "conicdual/problem.hpp"
#include "support/random.hpp"

namespace testing_support {

/// How b and c of a random instance are chosen.
///  random:           independent small rationals
///  feasible:         b = A x0 - q0, c = A* w0 + p0 (both sides consistent)
///  strictly_dual:    c = A* w0 + p0 with p0 a positive mix of all P* generators
///  strictly_primal:  b = A x0 - q0 with q0 a positive mix of all Q generators
enum class Data { random, feasible, strictly_dual, strictly_primal };

namespace instances_detail {

inline Vector positive_mix(Rng& rng, const conicdual::Cone& c) {
  std::vector<Rational> x(c.dimension());
  for (const auto& g : conicdual::generators_of(c)) {
    Rational w = conicdual::make_rational(rng.integer(1, 6), rng.integer(1, 3));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += w * g[i];
  }
  return Vector::dense(std::move(x));
}

}  // namespace instances_detail

/// Random finite instance: n <= 5 variables, m <= 4 rows, cones of every
/// finite form with at most 4 generators or normals per block.
inline conicdual::Problem random_problem(Rng& rng, Data data) {
  using conicdual::LinearMap;
  const auto n = static_cast<std::size_t>(rng.integer(1, 5));
  const auto m = static_cast<std::size_t>(rng.integer(1, 4));
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < m; ++i) rows.push_back(Vector::dense(rng.small_ints(n, 2)));
  LinearMap a = LinearMap::matrix(rows, n);
  conicdual::Cone p = random_cone(rng, n), q = random_cone(rng, m);
  Vector b = rng.dense(m), c = rng.dense(n);
  conicdual::Cone pd = conicdual::dual_cone(p), qd = conicdual::dual_cone(q);
  if (data == Data::feasible || data == Data::strictly_primal) {
    Vector q0 = data == Data::strictly_primal ? instances_detail::positive_mix(rng, q) : random_member(rng, q);
    b = a.apply(random_member(rng, p)) - q0;
  }
  if (data == Data::feasible || data == Data::strictly_dual) {
    Vector p0 = data == Data::strictly_dual ? instances_detail::positive_mix(rng, pd) : random_member(rng, pd);
    c = a.adjoint_apply(random_member(rng, qd)) + p0;
  }
  return conicdual::Problem::finite(a, b, c, p, q);
}

/// Cycles through the data modes so a batch covers all of them.
inline conicdual::Problem random_problem(Rng& rng, std::size_t index) {
  static constexpr Data modes[] = {Data::random, Data::feasible, Data::strictly_dual, Data::strictly_primal};
  return random_problem(rng, modes[index % 4]);
}

}  // namespace testing_support
