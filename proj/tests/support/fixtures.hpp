#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "conicdual/problem.hpp"

namespace testing_support {

inline conicdual::Vector D(std::initializer_list<long> xs) {
  std::vector<conicdual::Rational> v;
  for (long x : xs) v.emplace_back(x);
  return conicdual::Vector::dense(std::move(v));
}

inline conicdual::Rational R(const std::string& s) { return conicdual::parse_rational(s); }

/// min x1 + 2 x2  s.t.  x1 + x2 >= 2,  x >= 0. Both optima equal 2.
inline conicdual::Problem instance_i1(conicdual::Cone q = conicdual::Cone::orthant(1)) {
  using namespace conicdual;
  return Problem::finite(LinearMap::matrix({D({1, 1})}, 2), D({2}), D({1, 2}), Cone::orthant(2), std::move(q));
}

}  // namespace testing_support
