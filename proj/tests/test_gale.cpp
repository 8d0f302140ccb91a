#include "catch2/catch_amalgamated.hpp"

#include "conicdual/farkas.hpp"
#include "conicdual/gale.hpp"
#include "conicdual/perturb.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace conicdual;
using namespace testing_support;

namespace {

/// Independent oracle: min x_0 over the finite LP x_0..x_n with
/// x_0 + sum i x_i = alpha, sum_{i>=1} x_i = beta, x >= 0, by simplex.
Extended truncated_primal(const Rational& alpha, const Rational& beta, std::size_t n) {
  lp::LinearSystem s(n + 1);
  std::vector<Rational> first(n + 1), second(n + 1), obj(n + 1);
  first[0] = 1;
  obj[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    first[i] = Rational(Integer(i));
    second[i] = 1;
  }
  s.add(first, lp::Relation::eq, alpha);
  s.add(second, lp::Relation::eq, beta);
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Rational> e(n + 1);
    e[i] = 1;
    s.add(e, lp::Relation::ge, 0);
  }
  auto o = lp::lp_solve(obj, s, lp::Sense::minimize);
  if (o.status == lp::LPStatus::infeasible) return Extended::pos_inf();
  return *o.value;
}

std::size_t ceil_ratio(const Rational& a, const Rational& b) {
  return static_cast<std::size_t>(ceil_int(a / b).convert_to<long>());
}

}  // namespace

TEST_CASE("gale problem data") {
  Problem g = gale_problem(1, 0);
  CHECK(g.b() == D({1, 0}));
  CHECK(g.c() == Vector::finite_support({{0, Rational(1)}}));
  CHECK(g.c()[0] == 1);
  CHECK(g.c()[5] == 0);
  CHECK(g.Q() == Cone::zero(2));
}

TEST_CASE("domain and value of v_D") {
  Problem g = gale_problem(1, 0);
  CHECK(gale_dom_vD(g, D({0, 0})));
  CHECK(gale_vD(g, D({0, 0})).value == Extended(0));
  CHECK_FALSE(gale_dom_vD(g, D({0, -1})));
  CHECK(gale_vD(g, D({0, -1})).value == Extended::pos_inf());
  CHECK(gale_vD(gale_problem(1, 2), D({0, 0})).value == Extended::pos_inf());
}

TEST_CASE("closed-form v_D agrees with the dual LP") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    Problem g = gale_problem(abs(rng.rational(3, 2)), abs(rng.rational(3, 2)));
    Vector z = rng.dense(2);
    CHECK(gale_vD(g, z).value == v_D(g, z).value);
  }
}

TEST_CASE("closed-form H and N") {
  for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 0}, {2, 1}, {R("5/2"), 1}, {3, 3}}) {
    Problem g = gale_problem(a, b);
    SetPoint w = gale_gap_witness(g);
    CHECK(w.base == Vector::dense({1 - a, -b}));
    CHECK(w.height == R("1/2"));
    CHECK(gale_member_N(g, w));
    CHECK_FALSE(gale_member_H(g, w));
    CHECK(gale_member_H(g, {Vector::dense({-a, -b}), 0}));
  }
  Problem g = gale_problem(2, 1);
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    Rational t1 = abs(rng.rational()), t2 = abs(rng.rational());
    CHECK(gale_member_H(g, {Vector::dense({t1 - 2, Rational(-1)}), t1 + t2}));
  }
}

TEST_CASE("H members are N members and the closure of H is N") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    Problem g = gale_problem(abs(rng.rational(2, 2)), abs(rng.rational(2, 2)));
    SetPoint pt{rng.dense(2, 3, 2), rng.rational(2, 2)};
    if (gale_member_H(g, pt)) REQUIRE(gale_member_N(g, pt));
    REQUIRE(gale_member_N(g, pt) == gale_member_closure_H(g, pt));
  }
}

TEST_CASE("closed-form H agrees with the computed perturbed primal") {
  Rng rng(24);
  for (int i = 0; i < 300; ++i) {
    Problem g = gale_problem(abs(rng.rational(2, 2)), abs(rng.rational(2, 2)));
    SetPoint pt{rng.dense(2, 3, 2), rng.rational(2, 2)};
    auto pv = primal_value(g, pt.base, g.zero_y());
    bool computed = pv.value < Extended(pt.height) || (pv.attained && pv.value == Extended(pt.height));
    REQUIRE(gale_member_H(g, pt) == computed);
  }
}

TEST_CASE("closed-form values") {
  auto check = [](Rational a, Rational b, Extended primal, Gap gap) {
    Problem g = gale_problem(a, b);
    DualityReport r = gale_values(g);
    CHECK(r.primal.value == primal);
    CHECK(r.dual.value == Extended(0));
    CHECK(r.gap.kind == gap.kind);
    CHECK(r.gap.amount == gap.amount);
    CHECK(val_primal(g).value == primal);
    CHECK(val_dual(g).value == Extended(0));
    return r;
  };
  check(1, 0, Extended(1), {GapKind::positive, 1});
  auto r21 = check(2, 1, Extended(0), {});
  CHECK(r21.primal.attained);
  CHECK(*r21.primal.witness == Vector::finite_support({{2, Rational(1)}}));
  auto r52 = check(R("5/2"), 1, Extended(0), {});
  CHECK(*r52.primal.witness == Vector::finite_support({{2, R("1/2")}, {3, R("1/2")}}));
  auto r33 = check(3, 3, Extended(0), {});
  CHECK(*r33.primal.witness == Vector::finite_support({{1, Rational(3)}}));
  CHECK(gale_values(gale_problem(1, 2)).primal.value == Extended::pos_inf());
}

TEST_CASE("closed-form witnesses are feasible") {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    Rational b = abs(rng.rational(2, 3));
    Rational a = b + abs(rng.rational(3, 3));
    Problem g = gale_problem(a, b);
    auto cf = gale_primal_closed_form(a, b);
    REQUIRE(cf.witness);
    CHECK(gale_primal_feasible(a, b, *cf.witness));
    CHECK(pair(*cf.witness, g.c()) == cf.value.value());
  }
}

TEST_CASE("truncations") {
  Problem g21 = gale_problem(2, 1), g10 = gale_problem(1, 0), g52 = gale_problem(R("5/2"), 1);
  CHECK(val_primal(gale_truncate(g21, 2)).value == Extended(0));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(val_primal(gale_truncate(g10, n)).value == Extended(1));
  CHECK(val_primal(gale_truncate(g52, 1)).value == Extended(R("3/2")));
  CHECK(val_primal(gale_truncate(g52, 3)).value == Extended(0));
}

TEST_CASE("closed forms match the independent truncation oracle") {
  Rng rng(26);
  for (int i = 0; i < 80; ++i) {
    Rational b = rng.coin(0.3) ? Rational(0) : abs(rng.rational(2, 2));
    Rational a = b + abs(rng.rational(3, 2));
    Problem g = gale_problem(a, b);
    Extended closed = gale_values(g).primal.value;
    Extended previous = Extended::pos_inf();
    std::size_t stable = b == 0 ? 1 : std::max<std::size_t>(1, ceil_ratio(a, b));
    for (std::size_t n = 1; n <= stable + 2; ++n) {
      Extended t = truncated_primal(a, b, n);
      CHECK(val_primal(gale_truncate(g, n)).value == t);
      CHECK(t <= previous);  // more columns never hurt
      CHECK(t >= closed);
      if (n >= stable) CHECK(t == closed);
      previous = t;
      // Truncated duals stay above the gale dual value 0 and FM agrees.
      Problem tp = gale_truncate(g, n);
      auto dv = val_dual(tp).value;
      CHECK(dv >= Extended(0));
      auto pr = perturb_detail::dual_program(tp, tp.zero_z(), tp.zero_y());
      CHECK(lp::fm_optimize(pr.objective, pr.system, pr.sense).value == dv);
    }
  }
}

TEST_CASE("Farkas alternative fails for the gale family") {
  Problem g = gale_problem(1, 0);
  FarkasVerdict v = farkas1(g, D({0, 0}), 0);
  CHECK(v.a_holds);
  CHECK_FALSE(v.b_holds);
  CHECK_FALSE(v.equivalent);
}

TEST_CASE("gale sup over H by Fourier-Motzkin matches sampled points") {
  Rng rng(27);
  Problem g = gale_problem(R("5/2"), 1);
  for (int i = 0; i < 100; ++i) {
    Vector w = rng.dense(2);
    Rational wr = -abs(rng.rational());
    Extended sup = gale_sup_over_H(g, w, wr);
    for (int k = 0; k < 20; ++k) {
      Rational t1 = abs(rng.rational()), t2 = abs(rng.rational()) + make_rational(1, 8), t3 = abs(rng.rational());
      SetPoint h{Vector::dense({t1 + t2 - R("5/2"), t2 - 1}), t3};
      REQUIRE(gale_member_H(g, h));
      CHECK(Extended(pair(h.base, w) + wr * h.height) <= sup);
    }
  }
}
