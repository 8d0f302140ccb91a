// conicdual: command-line front end for the conic duality engine.
//
// Exit codes: 0 completed (a positive duality gap is a result, not a
// failure), 1 input error, 2 internal inconsistency.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conicdual/conicdual.hpp"
#include "conicdual/io.hpp"

namespace {

using namespace conicdual;

struct Options {
  std::string format = "human";
  std::uint64_t seed = 0;
  std::string file;
  std::optional<std::string> z, y, alpha, beta, point;
  std::string set = "N";
  std::optional<std::size_t> truncate;
};

/// Raised when a check finishes but found samples violating the claimed equality.
struct ViolationsFound {
  Report report;
};

Rational required_rational(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw PreconditionError(std::string("missing required option ") + flag);
  return parse_rational(*v);
}

Report header(const char* command, const Problem* p) {
  Report r;
  r.set("command", command);
  if (p) r.set("kind", p->is_gale() ? "gale" : "finite");
  return r;
}

Report cmd_solve(const Problem& p) {
  Report r = header("solve", &p);
  r.set("val_primal", to_report(val_primal(p)));
  r.set("val_dual", to_report(val_dual(p)));
  return r;
}

Report cmd_gap(const Problem& p, const Options& o) {
  Report r = header("gap", &p);
  if (o.y) {
    Vector y = parse_perturbation(p, *o.y, true);
    r.set("y", to_report(y));
    r.set("report", to_report(strong_duality2(p, y)));
  } else {
    Vector z = o.z ? parse_perturbation(p, *o.z, false) : p.zero_z();
    r.set("z", to_report(z));
    r.set("report", to_report(strong_duality1(p, z)));
  }
  return r;
}

Report cmd_farkas(const Problem& p, const Options& o) {
  Report r = header("farkas", &p);
  Rational alpha = required_rational(o.alpha, "--alpha");
  r.set("alpha", to_string(alpha));
  if (o.y) {
    Vector y = parse_perturbation(p, *o.y, true);
    r.set("y", to_report(y));
    r.set("verdict", to_report(farkas2(p, y, alpha)));
  } else {
    if (!o.z) throw PreconditionError("farkas needs --z or --y");
    Vector z = parse_perturbation(p, *o.z, false);
    r.set("z", to_report(z));
    r.set("verdict", to_report(farkas1(p, z, alpha)));
  }
  return r;
}

Report cmd_slice(const Problem& p, const Options& o) {
  Report r = header("slice", &p);
  if (o.y) {
    Vector y = parse_perturbation(p, *o.y, true);
    r.set("y", to_report(y));
    r.set("slice", to_report(slice_equal_K_M(p, y)));
  } else {
    if (!o.z) throw PreconditionError("slice needs --z or --y");
    Vector z = parse_perturbation(p, *o.z, false);
    r.set("z", to_report(z));
    r.set("slice", to_report(slice_equal_H_N(p, z)));
  }
  return r;
}

Report cmd_separate(const Problem& p, const Options& o) {
  if (!o.point) throw PreconditionError("separate needs --point v1,...,vk,height");
  if (o.set != "N" && o.set != "M") throw PreconditionError("--set must be N or M");
  std::vector<Rational> v;
  std::stringstream ss(*o.point);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (v.empty()) throw PreconditionError("--point is empty");
  Rational height = v.back();
  v.pop_back();
  SetPoint pt{Vector::dense(std::move(v)), height};
  Report r = header("separate", &p);
  r.set("set", o.set);
  r.set("point", to_report(pt));
  if (o.set == "N") {
    p.check_z(pt.base);
    Separator s = separate_from_N(p, pt);
    if (!verify_separator_N(p, pt, s)) throw InternalInconsistency("separator from N failed its LP certificate");
    r.set("separator", to_report(s));
    r.set("sup_over_H", sup_over_H(p, s.functional, s.beta).str());
  } else {
    p.check_y(pt.base);
    Separator s = separate_from_M(p, pt);
    if (!verify_separator_M(p, pt, s)) throw InternalInconsistency("separator from M failed its LP certificate");
    r.set("separator", to_report(s));
    r.set("sup_over_K", sup_over_K(p, s.functional, s.beta).str());
  }
  r.set("verified", true);
  return r;
}

Report cmd_condition(const Problem& p, const Options& o, bool star) {
  Report r = header(star ? "check-dstar" : "check-d", &p);
  r.set("seed", std::to_string(o.seed));
  ConditionVerdict v = star ? check_condition_Dstar(p, o.seed) : check_condition_D(p, o.seed);
  r.set("verdict", to_report(v));
  if (!v.violations.empty()) throw ViolationsFound{r};
  return r;
}

Report cmd_core(const Problem& p) {
  Report r = header("core-conditions", &p);
  r.set("core_dual_condition", to_report(check_core_dual_condition(p)));
  r.set("core_primal_condition", to_report(check_core_primal_condition(p)));
  r.set("bidual_embedding", check_bidual_embedding(p));
  return r;
}

Report cmd_verify(const Problem& p, const Options& o, bool dual_side) {
  Report r = header(dual_side ? "verify-52" : "verify-53", &p);
  r.set("seed", std::to_string(o.seed));
  SufficiencyReport s =
      dual_side ? verify_dual_core_sufficiency(p, o.seed) : verify_primal_core_sufficiency(p, o.seed);
  r.set("result", to_report(s));
  if (!s.violations.empty()) throw ViolationsFound{r};
  return r;
}

Report cmd_gale(const Options& o) {
  Problem g = gale_problem(required_rational(o.alpha, "--alpha"), required_rational(o.beta, "--beta"));
  Report r = header("gale", &g);
  r.set("alpha", to_string(g.alpha()));
  r.set("beta", to_string(g.beta()));
  DualityReport closed = gale_values(g);
  ExtendedValue computed = val_primal(g);
  if (computed.value != closed.primal.value)
    throw InternalInconsistency("gale: computed val_primal " + computed.value.str() + " differs from closed form " +
                                closed.primal.value.str());
  r.set("values", to_report(closed));
  r.set("computed_primal", to_report(computed));
  r.set("condition_D", to_report(check_condition_D(g, o.seed)));
  if (o.truncate) {
    std::vector<Report> rows;
    for (std::size_t n = 1; n <= *o.truncate; ++n) {
      Problem t = gale_truncate(g, n);
      Report row;
      row.set("n", n);
      row.set("primal", val_primal(t).value.str());
      row.set("dual", val_dual(t).value.str());
      rows.push_back(row);
    }
    r.set("truncations", Report::list(std::move(rows)));
  }
  return r;
}

Extended lp_value(const lp::LPOutcome& o, lp::Sense sense) {
  switch (o.status) {
    case lp::LPStatus::optimal:
      return *o.value;
    case lp::LPStatus::unbounded:
      return sense == lp::Sense::minimize ? Extended::neg_inf() : Extended::pos_inf();
    case lp::LPStatus::infeasible:
      break;
  }
  return sense == lp::Sense::minimize ? Extended::pos_inf() : Extended::neg_inf();
}

Report oracle_side(const detail::Program& pr) {
  lp::LPOutcome o = lp::lp_solve(pr.objective, pr.system, pr.sense);
  lp::FMOptimum f = lp::fm_optimize(pr.objective, pr.system, pr.sense);
  Extended pivot = lp_value(o, pr.sense);
  bool certified = lp::verify_outcome(pr.objective, pr.system, pr.sense, o);
  bool agree = pivot == f.value && (!f.value.is_finite() || f.attained);
  Report r;
  r.set("simplex_status", lp::status_name(o.status));
  r.set("simplex_value", pivot.str());
  r.set("fm_value", f.value.str());
  r.set("agree", agree);
  r.set("certificate_verified", certified);
  if (!agree || !certified)
    throw InternalInconsistency("oracle: simplex " + pivot.str() + " vs Fourier-Motzkin " + f.value.str());
  return r;
}

Report cmd_oracle(const Problem& p) {
  if (!p.is_finite()) throw UnsupportedError("oracle: finite problems only");
  Report r = header("oracle", &p);
  r.set("primal", oracle_side(perturb_detail::primal_program(p, p.zero_z(), p.zero_y())));
  r.set("dual", oracle_side(perturb_detail::dual_program(p, p.zero_z(), p.zero_y())));
  return r;
}

void print(const Report& r, const Options& o) { std::cout << (o.format == "machine" ? r.yaml() : r.human()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact duality analysis of conic linear programs"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks (default 0)");

  auto file_cmd = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("file", o.file, "Problem file (YAML)")->required();
    s->fallthrough();
    return s;
  };
  auto* solve = file_cmd("solve", "Optimal values and witnesses of the primal and dual");
  auto* gap = file_cmd("gap", "Duality report at a perturbation (--z or --y)");
  auto* farkas = file_cmd("farkas", "Perturbed Farkas alternative at --alpha with --z or --y");
  auto* slice = file_cmd("slice", "Compare the H/N slice at --z or the K/M slice at --y");
  auto* separate = file_cmd("separate", "Separate --point from N (default) or M");
  auto* check_d = file_cmd("check-d", "Decide H = N");
  auto* check_dstar = file_cmd("check-dstar", "Decide K = M");
  auto* core = file_cmd("core-conditions", "Algebraic-core sufficient conditions and bidual embedding");
  auto* verify52 = file_cmd("verify-52", "Dual core condition plus bidual embedding, then H = N on samples");
  auto* verify53 = file_cmd("verify-53", "Primal core condition, then K = M on samples");
  auto* oracle = file_cmd("oracle", "Cross-check simplex against Fourier-Motzkin on the instance");
  auto* gale = app.add_subcommand("gale", "Analytics for the Gale family");
  gale->fallthrough();

  for (auto* s : {gap, farkas, slice}) {
    s->add_option("--z", o.z, "Z-perturbation: 0 or comma-separated rationals");
    s->add_option("--y", o.y, "Y-perturbation: 0 or comma-separated rationals");
  }
  farkas->add_option("--alpha", o.alpha, "Level alpha")->required();
  separate->add_option("--point", o.point, "Point v1,...,vk,height")->required();
  separate->add_option("--set", o.set, "N or M")->check(CLI::IsMember({"N", "M"}));
  gale->add_option("--alpha", o.alpha, "alpha")->required();
  gale->add_option("--beta", o.beta, "beta")->required();
  gale->add_option("--truncate", o.truncate, "Also solve truncations n = 1..N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Report r;
    if (gale->parsed()) {
      r = cmd_gale(o);
    } else {
      Problem p = load_problem(o.file);
      if (solve->parsed()) r = cmd_solve(p);
      else if (gap->parsed()) r = cmd_gap(p, o);
      else if (farkas->parsed()) r = cmd_farkas(p, o);
      else if (slice->parsed()) r = cmd_slice(p, o);
      else if (separate->parsed()) r = cmd_separate(p, o);
      else if (check_d->parsed()) r = cmd_condition(p, o, false);
      else if (check_dstar->parsed()) r = cmd_condition(p, o, true);
      else if (core->parsed()) r = cmd_core(p);
      else if (verify52->parsed()) r = cmd_verify(p, o, true);
      else if (verify53->parsed()) r = cmd_verify(p, o, false);
      else if (oracle->parsed()) r = cmd_oracle(p);
    }
    print(r, o);
    return 0;
  } catch (const ViolationsFound& v) {
    print(v.report, o);
    std::cerr << "error: sampled slices violate a proven identity\n";
    return 2;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
