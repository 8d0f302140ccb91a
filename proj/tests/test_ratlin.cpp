#include "catch2/catch_amalgamated.hpp"

#include "conicdual/linear_map.hpp"
#include "conicdual/vector.hpp"
#include "support/random.hpp"

using namespace conicdual;
using testing_support::Rng;

namespace {

Vector D(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return Vector::dense(std::move(v));
}

Vector random_sequence(Rng& rng, std::size_t len) {
  Vector::Support s;
  for (std::size_t i = 0; i < len; ++i)
    if (rng.coin(0.6)) s[i] = rng.rational();
  return Vector::finite_support(std::move(s));
}

}  // namespace

TEST_CASE("rationals are canonical and round-trip through text") {
  CHECK(to_string(make_rational(2, 4)) == "1/2");
  CHECK(to_string(make_rational(-6, 3)) == "-2");
  CHECK(to_string(make_rational(3, -4)) == "-3/4");
  CHECK(parse_rational("-0") == 0);
  CHECK(parse_rational("+7/14") == make_rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
  CHECK_THROWS_AS(parse_rational("1.5"), PreconditionError);
  CHECK_THROWS_AS(parse_rational(""), PreconditionError);
  CHECK(make_rational(1, 3) + make_rational(1, 6) == make_rational(1, 2));

  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Rational q = rng.rational(1000, 997);
    std::string s = to_string(q);
    CHECK(parse_rational(s) == q);
    CHECK(to_string(parse_rational(s)) == s);
  }
  CHECK(floor_int(make_rational(-5, 2)) == -3);
  CHECK(ceil_int(make_rational(-5, 2)) == -2);
  CHECK(ceil_int(make_rational(5, 2)) == 3);
  CHECK(floor_int(Rational(4)) == 4);
}

TEST_CASE("pair") {
  CHECK(pair(D({1, 2}), D({3, 4})) == 11);
  CHECK(pair(D({0, 0}), D({5, -7})) == 0);
  Vector x = Vector::finite_support({{3, Rational(5)}});
  Vector y = Vector::affine_sequence(0, 1, 0);  // y_i = i
  CHECK(pair(x, y) == 15);
  CHECK(pair(y, x) == 15);
  CHECK_THROWS_AS(pair(D({1}), D({1, 2})), ShapeError);
  CHECK_THROWS_AS(pair(D({1}), x), ShapeError);
  CHECK_THROWS_AS(pair(y, y), ShapeError);
}

TEST_CASE("finite-support vectors store no zeros") {
  Vector v = Vector::finite_support({{0, Rational(0)}, {2, Rational(1)}});
  CHECK(v.support().size() == 1);
  Vector w = v + Vector::finite_support({{2, Rational(-1)}});
  CHECK(w.is_zero());
  CHECK(w == Vector::finite_support());
}

TEST_CASE("apply") {
  LinearMap a = LinearMap::matrix({D({1, 1})}, 2);
  CHECK(a.apply(D({2, 0})) == D({2}));
  CHECK(a.apply(D({0, 0})) == D({0}));
  CHECK_THROWS_AS(a.apply(D({1})), ShapeError);
  CHECK_THROWS_AS(LinearMap::matrix({D({1})}, 2), ShapeError);

  LinearMap g = LinearMap::gale_operator();
  Vector x = Vector::finite_support({{0, Rational(1)}, {2, Rational(3)}});
  CHECK(g.apply(x) == D({7, 3}));
  CHECK(g.apply(Vector::finite_support()) == D({0, 0}));
  CHECK_THROWS_AS(g.apply(D({1, 2})), ShapeError);
}

TEST_CASE("adjoint_apply") {
  LinearMap a = LinearMap::matrix({D({1, 1})}, 2);
  CHECK(a.adjoint_apply(D({1})) == D({1, 1}));

  Vector s = LinearMap::gale_operator().adjoint_apply(D({0, -1}));
  CHECK(s.at(0) == 0);
  for (std::size_t i = 1; i < 50; ++i) CHECK(s.at(i) == -1);

  Vector t = LinearMap::gale_operator().adjoint_apply(D({2, 5}));
  CHECK(t.at(0) == 2);
  CHECK(t.at(1) == 7);
  CHECK(t.at(10) == 25);
}

TEST_CASE("adjoint identity and linearity on random data") {
  Rng rng(2);
  for (int inst = 0; inst < 10; ++inst) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    std::size_t m = static_cast<std::size_t>(rng.integer(1, 4));
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(rng.dense(n));
    LinearMap a = LinearMap::matrix(rows, n);
    for (int k = 0; k < 200; ++k) {
      Vector x = rng.dense(n), x2 = rng.dense(n), w = rng.dense(m);
      CHECK(pair(x, a.adjoint_apply(w)) == pair(a.apply(x), w));
      Rational p = rng.rational(), q = rng.rational();
      CHECK(a.apply(p * x + q * x2) == p * a.apply(x) + q * a.apply(x2));
    }
  }
  LinearMap g = LinearMap::gale_operator();
  for (int k = 0; k < 200; ++k) {
    Vector x = random_sequence(rng, 8), x2 = random_sequence(rng, 8), w = rng.dense(2);
    CHECK(pair(x, g.adjoint_apply(w)) == pair(g.apply(x), w));
    Rational p = rng.rational(), q = rng.rational();
    CHECK(g.apply(p * x + q * x2) == p * g.apply(x) + q * g.apply(x2));
  }
}

TEST_CASE("affine sequence arithmetic") {
  Vector a = Vector::affine_sequence(1, 2, 3, {{4, Rational(1)}});
  Vector b = Vector::finite_support({{1, Rational(-5)}});
  Vector c = a + b;
  CHECK(c.at(0) == 1);
  CHECK(c.at(1) == 0);
  CHECK(c.at(4) == 12);
  CHECK(c.at(5) == 13);
  CHECK((a - a).is_zero());
  CHECK((a - a).shape() == Vector::Shape::finite_support);
}
