// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every comparison is exact (rational arithmetic, tolerance 0).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "conicdual/conicdual.hpp"
#include "support/fixtures.hpp"
#include "support/instances.hpp"

using namespace conicdual;
using namespace testing_support;

namespace {

// Pinned sizes and seeds.
constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kWeakDualityInstances = 1000;
constexpr std::size_t kConditionInstances = 100;
constexpr std::size_t kConditionSamples = 100;
constexpr std::size_t kGaleSamples = 20;
constexpr std::size_t kFarkasInstances = 30;
constexpr std::size_t kFarkasPerturbations = 2;
constexpr std::size_t kFarkasLevels = 50;
constexpr std::size_t kBiconditionalInstances = 60;
constexpr std::size_t kBiconditionalPerturbations = 5;
constexpr std::size_t kSeparationInstances = 20;
constexpr std::size_t kSeparationPoints = 200;
constexpr std::size_t kSufficiencyInstances = 50;
constexpr std::size_t kSufficiencySamples = 100;
constexpr std::size_t kOracleLPs = 1000;
constexpr std::size_t kInclusionInstances = 12;
constexpr std::size_t kInclusionPoints = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

/// Runs body(i) for i < n over a thread pool; returns the summed counts.
std::size_t parallel_sum(std::size_t n, const std::function<std::size_t(std::size_t)>& body) {
  std::atomic<std::size_t> next{0}, total{0};
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < n;) total += body(i);
    }));
  for (auto& f : pool) f.get();
  return total;
}

/// Deterministic instance i of a suite, independent of thread scheduling.
Problem instance(std::uint64_t suite, std::size_t i) {
  Rng rng(kSeed ^ (suite * 1000003u) ^ (i * 7919u));
  return random_problem(rng, i);
}

bool consistent(const Problem& p) {
  return val_primal(p).value < Extended::pos_inf() && val_dual(p).value > Extended::neg_inf();
}

/// The i-th consistent instance of a suite (skips inconsistent draws).
Problem consistent_instance(std::uint64_t suite, std::size_t i) {
  for (std::size_t k = 0;; ++k) {
    Problem p = instance(suite, i * 64 + k);
    if (consistent(p)) return p;
  }
}

std::string count_line(std::size_t checked, const char* what, std::size_t bad) {
  return std::to_string(checked) + " " + what + ", " + std::to_string(bad) + " violations";
}

Outcome weak_duality() {
  std::size_t bad = parallel_sum(kWeakDualityInstances, [](std::size_t i) -> std::size_t {
    Problem p = instance(1, i);
    return val_dual(p).value <= val_primal(p).value ? 0 : 1;
  });
  return {bad == 0, count_line(kWeakDualityInstances, "instances", bad)};
}

Outcome gale_gaps() {
  struct Case {
    Rational alpha, beta;
    Gap gap;
  };
  std::vector<Case> cases = {{1, 0, {GapKind::positive, 1}},
                             {2, 0, {GapKind::positive, 2}},
                             {R("5/2"), 0, {GapKind::positive, R("5/2")}},
                             {2, 1, {}},
                             {R("5/2"), 1, {}},
                             {3, 3, {}}};
  std::size_t bad = 0;
  for (const auto& c : cases) {
    Problem g = gale_problem(c.alpha, c.beta);
    DualityReport r = gale_values(g);
    if (r.gap.kind != c.gap.kind || r.gap.amount != c.gap.amount) ++bad;
    if (val_primal(g).value != r.primal.value || val_dual(g).value != r.dual.value) ++bad;
    std::size_t stable = c.beta == 0 ? 1 : static_cast<std::size_t>(ceil_int(c.alpha / c.beta).convert_to<long>());
    Extended previous = Extended::pos_inf();
    for (std::size_t n = 1; n <= 8; ++n) {
      Extended t = val_primal(gale_truncate(g, n)).value;
      if (t > previous || t < r.primal.value) ++bad;
      if (n >= stable && t != r.primal.value) ++bad;
      previous = t;
    }
  }
  return {bad == 0, std::to_string(cases.size()) + " parameter pairs x 8 truncations, " + std::to_string(bad) +
                        " mismatches"};
}

Outcome condition_d() {
  std::size_t bad = parallel_sum(kConditionInstances, [](std::size_t i) -> std::size_t {
    Problem p = consistent_instance(3, i);
    ConditionVerdict v = check_condition_D(p, 0, kConditionSamples);
    return v.holds == Tri::yes && v.samples == kConditionSamples && v.violations.empty() ? 0 : 1;
  });
  std::size_t gale_bad = 0;
  Rng rng(kSeed + 3);
  for (std::size_t i = 0; i < kGaleSamples; ++i) {
    Rational b = abs(rng.rational(3, 4));
    Rational a = b + abs(rng.rational(3, 4));
    Problem g = gale_problem(a, b);
    ConditionVerdict v = check_condition_D(g);
    SetPoint expect{Vector::dense({1 - a, -b}), make_rational(1, 2)};
    bool ok = v.holds == Tri::no && v.witness && v.witness->base == expect.base &&
              v.witness->height == expect.height && member_N(g, expect) && !member_H(g, expect);
    gale_bad += !ok;
  }
  return {bad == 0 && gale_bad == 0, count_line(kConditionInstances, "consistent instances x 100 slices", bad) +
                                         "; " + count_line(kGaleSamples, "gale pairs", gale_bad)};
}

std::vector<Rational> levels(Rng& rng, const Extended& v) {
  std::vector<Rational> out;
  if (v.is_finite())
    for (auto d : {R("-2"), R("-1/3"), R("0"), R("1/3"), R("2")}) out.push_back(v.value() + d);
  while (out.size() < kFarkasLevels) out.push_back(rng.rational(8, 6));
  return out;
}

Outcome farkas() {
  std::atomic<std::size_t> one_way{0};
  std::size_t bad = parallel_sum(kFarkasInstances, [&](std::size_t i) -> std::size_t {
    Problem p = consistent_instance(4, i);
    Rng rng(kSeed + 400 + i);
    std::size_t fails = 0;
    for (std::size_t k = 0; k < kFarkasPerturbations; ++k) {
      Vector z = rng.dense(p.z_dim()), y = rng.dense(p.x_dim());
      for (const Rational& a : levels(rng, v_D(p, z).value)) {
        FarkasVerdict v = farkas1(p, z, a);
        fails += !v.equivalent;
        one_way += v.b_holds && !v.a_holds;
      }
      for (const Rational& a : levels(rng, v_P(p, y).value)) {
        FarkasVerdict v = farkas2(p, y, a);
        fails += !v.equivalent;
        one_way += v.b_holds && !v.a_holds;
      }
    }
    return fails;
  });
  // b => a on the gale family as well, where equivalence may fail.
  Rng rng(kSeed + 4);
  for (int i = 0; i < 100; ++i) {
    Problem g = gale_problem(abs(rng.rational(2, 2)), abs(rng.rational(2, 2)));
    FarkasVerdict v = farkas1(g, rng.dense(2, 2, 2), rng.rational(2, 2));
    one_way += v.b_holds && !v.a_holds;
  }
  FarkasVerdict gale = farkas1(gale_problem(1, 0), D({0, 0}), 0);
  bool gale_ok = gale.a_holds && !gale.b_holds;
  std::size_t total = kFarkasInstances * kFarkasPerturbations * 2 * kFarkasLevels;
  return {bad == 0 && one_way == 0 && gale_ok,
          count_line(total, "(perturbation, level) pairs", bad) + "; b-without-a " + std::to_string(one_way.load()) +
              "; gale(1,0) at level 0: a " + (gale.a_holds ? "true" : "false") + ", b " +
              (gale.b_holds ? "true" : "false")};
}

Outcome biconditionals() {
  std::size_t bad = parallel_sum(kBiconditionalInstances, [](std::size_t i) -> std::size_t {
    Problem p = consistent_instance(5, i);
    Rng rng(kSeed + 500 + i);
    std::size_t fails = 0;
    for (std::size_t k = 0; k < kBiconditionalPerturbations; ++k) {
      Vector z = k == 0 ? p.zero_z() : rng.dense(p.z_dim());
      Vector y = k == 0 ? p.zero_y() : rng.dense(p.x_dim());
      DualityReport r1 = strong_duality1(p, z), r2 = strong_duality2(p, y);
      fails += r1.biconditional != true;
      fails += r2.biconditional != true;
    }
    return fails;
  });
  std::size_t gale_bad = 0;
  Rng rng(kSeed + 5);
  for (int i = 0; i < 40; ++i) {
    Problem g = gale_problem(abs(rng.rational(2, 2)), abs(rng.rational(2, 2)));
    DualityReport r = strong_duality1(g, i == 0 ? g.zero_z() : rng.dense(2, 2, 2));
    gale_bad += r.consistent && r.biconditional != true;
  }
  return {bad == 0 && gale_bad == 0,
          count_line(kBiconditionalInstances * kBiconditionalPerturbations * 2, "finite reports", bad) + "; " +
              count_line(40, "gale reports", gale_bad)};
}

Outcome separation() {
  std::atomic<std::size_t> checked{0};
  std::size_t bad = parallel_sum(kSeparationInstances, [&](std::size_t i) -> std::size_t {
    Problem p = consistent_instance(6, i);
    Rng rng(kSeed + 600 + i);
    std::size_t fails = 0;
    // Points below N: r strictly under v_D(z), or any r where v_D(z) = +inf.
    for (std::size_t k = 0; k < kSeparationPoints; ++k) {
      Vector z = rng.dense(p.z_dim());
      Extended vd = v_D(p, z).value;
      Rational r = vd.is_finite() ? vd.value() - abs(rng.rational()) - make_rational(1, 8) : rng.rational();
      SetPoint pt{z, r};
      Separator s = separate_from_N(p, pt);
      fails += !verify_separator_N(p, pt, s);
      ++checked;
    }
    // Points above M (P** = P holds for every closed polyhedral P).
    for (std::size_t k = 0; k < kSeparationPoints; ++k) {
      Vector y = rng.dense(p.x_dim());
      Extended vp = v_P(p, y).value;
      Rational r = vp.is_finite() ? vp.value() + abs(rng.rational()) + make_rational(1, 8) : rng.rational();
      SetPoint pt{y, r};
      Separator s = separate_from_M(p, pt);
      fails += !verify_separator_M(p, pt, s);
      ++checked;
    }
    return fails;
  });
  return {bad == 0, count_line(checked, "separations (N and M)", bad)};
}

Outcome sufficiency() {
  // Scan the premise-targeted generators until enough instances qualify.
  auto sweep = [](Data mode, bool dual_side) {
    std::atomic<std::size_t> qualified{0};
    std::size_t bad = parallel_sum(kSufficiencyInstances, [&](std::size_t i) -> std::size_t {
      for (std::size_t k = 0;; ++k) {
        Rng rng(kSeed + 700 + i * 131 + k);
        Problem p = random_problem(rng, mode);
        SufficiencyReport r = dual_side ? verify_dual_core_sufficiency(p, 0, kSufficiencySamples)
                                        : verify_primal_core_sufficiency(p, 0, kSufficiencySamples);
        if (!r.conclusion_checked) continue;
        ++qualified;
        return r.violations.size();
      }
    });
    return std::make_pair(qualified.load(), bad);
  };
  auto [dual_n, dual_bad] = sweep(Data::strictly_dual, true);
  auto [primal_n, primal_bad] = sweep(Data::strictly_primal, false);
  bool ok = dual_n >= kSufficiencyInstances && primal_n >= kSufficiencyInstances && dual_bad == 0 && primal_bad == 0;
  return {ok, "dual-core sweep " + count_line(dual_n, "instances", dual_bad) + "; primal-core sweep " +
                  count_line(primal_n, "instances", primal_bad)};
}

Outcome oracle() {
  std::atomic<std::size_t> by_status[3] = {0, 0, 0};
  std::size_t bad = parallel_sum(kOracleLPs, [&](std::size_t i) -> std::size_t {
    Rng rng(kSeed + 800 + i);
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    // Half the systems are boxed (2n bound rows counted in the 12) to favour optima.
    bool boxed = n <= 5 && rng.coin();
    std::size_t m = static_cast<std::size_t>(rng.integer(1, boxed ? 12 - 2 * static_cast<long>(n) : 12));
    lp::LinearSystem s(n);
    for (std::size_t j = 0; boxed && j < n; ++j) {
      std::vector<Rational> e(n);
      e[j] = 1;
      s.add(e, lp::Relation::ge, -4);
      e[j] = -1;
      s.add(e, lp::Relation::ge, -4);
    }
    for (std::size_t k = 0; k < m; ++k)
      s.add(rng.small_ints(n, 3), rng.coin(0.15) ? lp::Relation::eq : lp::Relation::ge, rng.integer(-3, 3));
    std::vector<Rational> obj = rng.small_ints(n, 3);
    lp::Sense sense = rng.coin() ? lp::Sense::minimize : lp::Sense::maximize;
    lp::LPOutcome o = lp::lp_solve(obj, s, sense);
    lp::FMOptimum f = lp::fm_optimize(obj, s, sense);
    if (!lp::verify_outcome(obj, s, sense, o)) return 1;
    ++by_status[static_cast<int>(o.status)];
    switch (o.status) {
      case lp::LPStatus::infeasible:
        return f.feasible ? 1 : 0;
      case lp::LPStatus::unbounded:
        return f.feasible && !f.value.is_finite() ? 0 : 1;
      case lp::LPStatus::optimal:
        return f.feasible && f.attained && f.value == Extended(*o.value) ? 0 : 1;
    }
    return 1;
  });
  return {bad == 0, count_line(kOracleLPs, "random LPs", bad) + " (infeasible " + std::to_string(by_status[0]) +
                        ", unbounded " + std::to_string(by_status[1]) + ", optimal " +
                        std::to_string(by_status[2]) + ")"};
}

Outcome inclusions() {
  std::atomic<std::size_t> points{0}, n_hits{0}, m_hits{0};
  std::size_t bad = parallel_sum(kInclusionInstances + 3, [&](std::size_t i) -> std::size_t {
    const bool gale = i >= kInclusionInstances;
    Problem p = gale ? gale_problem(std::vector<Rational>{1, R("5/2"), 3}[i - kInclusionInstances],
                                    std::vector<Rational>{0, 1, 3}[i - kInclusionInstances])
                     : consistent_instance(9, i);
    Rng rng(kSeed + 900 + i);
    auto y_vec = [&] {
      if (!gale) return rng.dense(p.x_dim());
      Vector::Support s;
      for (std::size_t k = 0; k < 3; ++k) s[k] = rng.rational(1, 2);
      return Vector::finite_support(s);
    };
    std::size_t fails = 0;
    std::vector<SetPoint> in_n, in_m;
    for (std::size_t k = 0; k < kInclusionPoints; ++k) {
      SetPoint h{rng.dense(p.z_dim(), 3, 2), rng.rational(3, 2)};
      bool n_member = member_N(p, h);
      if (member_H(p, h) && !n_member) ++fails;
      if (acl_member_H(p, h) && !n_member) ++fails;
      if (n_member) in_n.push_back(h);
      SetPoint q{y_vec(), rng.rational(3, 2)};
      bool m_member = member_M(p, q);
      if (member_K(p, q) && !m_member) ++fails;
      if (m_member) in_m.push_back(q);
      ++points;
    }
    n_hits += in_n.size();
    m_hits += in_m.size();
    for (std::size_t k = 1; k < in_n.size(); ++k)
      fails += !member_N(p, {R("1/2") * (in_n[k - 1].base + in_n[k].base), (in_n[k - 1].height + in_n[k].height) / 2});
    for (std::size_t k = 1; k < in_m.size(); ++k)
      fails += !member_M(p, {R("1/2") * (in_m[k - 1].base + in_m[k].base), (in_m[k - 1].height + in_m[k].height) / 2});
    return fails;
  });
  return {bad == 0, count_line(points, "sampled points over finite and gale instances", bad) + " (" +
                        std::to_string(n_hits) + " in N, " + std::to_string(m_hits) + " in M)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"weak duality on generated instances", weak_duality},
      {"gale gap reproduction with truncation cross-check", gale_gaps},
      {"condition (D) dichotomy", condition_d},
      {"Farkas equivalence and its failure", farkas},
      {"slice/attainment biconditionals", biconditionals},
      {"separation soundness", separation},
      {"core-condition sufficiency sweeps", sufficiency},
      {"simplex vs Fourier-Motzkin oracle equivalence", oracle},
      {"inclusion and convexity suite", inclusions},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d [%s] %s: %s (%.1fs)\n", index, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
