#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "conicdual/error.hpp"
#include "conicdual/lp/fourier_motzkin.hpp"
#include "conicdual/lp/linear_system.hpp"
#include "conicdual/lp/simplex.hpp"
#include "conicdual/vector.hpp"

namespace conicdual {

/// A convex cone in X or Z (or in the dual spaces), always containing 0.
///
/// Finite forms live in R^n:
///   generators   cone(g_1, ..., g_k)        (k = 0 gives {0})
///   inequalities {x : <x, n_j> >= 0 for all j}
///   orthant      R^n_+
///   zero, full   {0} and R^n
///   product      C_1 x ... x C_r on consecutive coordinate blocks
/// Sequence forms:
///   sequence_orthant       R_+^(N): nonnegative finite-support sequences
///   sequence_dual_orthant  R_+^N:   all nonnegative sequences
class Cone {
 public:
  enum class Form { generators, inequalities, orthant, zero, full, product, sequence_orthant, sequence_dual_orthant };

  Cone() = default;

  static Cone generators(std::vector<Vector> gens, std::size_t dim) { return with_vectors(Form::generators, std::move(gens), dim); }
  static Cone inequalities(std::vector<Vector> normals, std::size_t dim) {
    return with_vectors(Form::inequalities, std::move(normals), dim);
  }
  static Cone orthant(std::size_t dim) { return simple(Form::orthant, dim); }
  static Cone zero(std::size_t dim) { return simple(Form::zero, dim); }
  static Cone full(std::size_t dim) { return simple(Form::full, dim); }
  static Cone product(std::vector<Cone> parts) {
    Cone c;
    c.form_ = Form::product;
    for (const auto& p : parts) {
      if (p.is_sequence()) throw ShapeError("product of sequence-space cones is not supported");
      c.dim_ += p.dim_;
    }
    c.parts_ = std::move(parts);
    return c;
  }
  static Cone sequence_orthant() { return simple(Form::sequence_orthant, 0); }
  static Cone sequence_dual_orthant() { return simple(Form::sequence_dual_orthant, 0); }

  Form form() const noexcept { return form_; }
  bool is_sequence() const noexcept { return form_ == Form::sequence_orthant || form_ == Form::sequence_dual_orthant; }
  std::size_t dimension() const {
    if (is_sequence()) throw ShapeError("sequence-space cone has no finite dimension");
    return dim_;
  }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  const std::vector<Cone>& parts() const noexcept { return parts_; }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.form_ == b.form_ && a.dim_ == b.dim_ && a.vectors_ == b.vectors_ && a.parts_ == b.parts_;
  }

  std::string str() const {
    switch (form_) {
      case Form::generators:
      case Form::inequalities: {
        std::string s = form_ == Form::generators ? "generators{" : "inequalities{";
        for (std::size_t i = 0; i < vectors_.size(); ++i) s += (i ? ", " : "") + vectors_[i].str();
        return s + "} in R^" + std::to_string(dim_);
      }
      case Form::orthant:
        return "orthant(" + std::to_string(dim_) + ")";
      case Form::zero:
        return "zero(" + std::to_string(dim_) + ")";
      case Form::full:
        return "full(" + std::to_string(dim_) + ")";
      case Form::product: {
        std::string s = "product(";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? ", " : "") + parts_[i].str();
        return s + ")";
      }
      case Form::sequence_orthant:
        return "R_+^(N)";
      case Form::sequence_dual_orthant:
        return "R_+^N";
    }
    return "?";
  }

 private:
  static Cone simple(Form f, std::size_t dim) {
    Cone c;
    c.form_ = f;
    c.dim_ = dim;
    return c;
  }
  static Cone with_vectors(Form f, std::vector<Vector> vs, std::size_t dim) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (!vs[i].is_dense() || vs[i].dimension() != dim)
        throw ShapeError("cone vector " + std::to_string(i) + " is not a dense vector of dimension " + std::to_string(dim));
    Cone c = simple(f, dim);
    c.vectors_ = std::move(vs);
    return c;
  }

  Form form_ = Form::zero;
  std::size_t dim_ = 0;
  std::vector<Vector> vectors_;
  std::vector<Cone> parts_;
};

namespace cone_detail {

using Rows = std::vector<std::vector<Rational>>;

inline void check_ambient(const Cone& c, const Vector& x) {
  if (c.is_sequence()) {
    if (x.is_dense()) throw ShapeError("dense vector tested against a sequence-space cone");
    return;
  }
  if (!x.is_dense() || x.dimension() != c.dimension())
    throw ShapeError("vector " + x.str() + " is not in the ambient space R^" + std::to_string(c.dimension()));
}

inline Vector slice(const Vector& x, std::size_t from, std::size_t len) {
  const auto& e = x.entries();
  return Vector::dense(std::vector<Rational>(e.begin() + static_cast<std::ptrdiff_t>(from),
                                             e.begin() + static_cast<std::ptrdiff_t>(from + len)));
}

inline std::vector<Rational> unit(std::size_t n, std::size_t i, int s = 1) {
  std::vector<Rational> v(n);
  v[i] = s;
  return v;
}

inline bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += a[i] * b[i];
  return s;
}

/// Positive rescaling to a primitive representative, for deduplication.
inline std::vector<Rational> scaled(std::vector<Rational> v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
  if (it == v.end()) return v;
  Rational s = 1 / abs(*it);
  for (auto& q : v) q *= s;
  return v;
}

inline Rows dedup(const Rows& rows) {
  std::set<std::vector<Rational>> seen;
  Rows out;
  for (const auto& r : rows) {
    if (is_zero(r)) continue;
    auto k = scaled(r);
    if (seen.insert(k).second) out.push_back(r);
  }
  return out;
}

inline std::vector<Vector> as_vectors(const Rows& rows) {
  std::vector<Vector> out;
  for (const auto& r : rows) out.push_back(Vector::dense(r));
  return out;
}

inline Rows as_rows(const std::vector<Vector>& vs) {
  Rows out;
  for (const auto& v : vs) out.push_back(v.entries());
  return out;
}

/// Normals F with cone(G) = {x : F x >= 0}, by projecting
/// {(x, lambda) : x = G^T lambda, lambda >= 0} onto x.
inline Rows facets_of_hull(const Rows& gens, std::size_t n) {
  const std::size_t k = gens.size();
  lp::LinearSystem s(n + k);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n + k);
    row[i] = 1;
    for (std::size_t j = 0; j < k; ++j) row[n + j] = -gens[j][i];
    s.add(std::move(row), lp::Relation::eq, 0);
  }
  for (std::size_t j = 0; j < k; ++j) s.add(unit(n + k, n + j), lp::Relation::ge, 0);
  lp::LinearSystem proj = lp::fm_project(s, n);
  Rows out;
  for (const auto& c : proj.constraints()) {
    if (is_zero(c.normal)) continue;  // homogeneous, so a constant row is 0 >= 0
    out.push_back(c.normal);
    if (c.rel == lp::Relation::eq) {
      std::vector<Rational> neg = c.normal;
      for (auto& q : neg) q = -q;
      out.push_back(std::move(neg));
    }
  }
  return dedup(out);
}

/// Embeds block rows of a product factor at coordinate offset `at`.
inline void append_embedded(Rows& out, const Rows& block, std::size_t at, std::size_t n) {
  for (const auto& r : block) {
    std::vector<Rational> v(n);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(at));
    out.push_back(std::move(v));
  }
}

}  // namespace cone_detail

/// A finite generating set of a finite-dimensional cone.
inline cone_detail::Rows generators_of(const Cone& c) {
  using namespace cone_detail;
  const std::size_t n = c.dimension();
  Rows out;
  switch (c.form()) {
    case Cone::Form::generators:
      return as_rows(c.vectors());
    case Cone::Form::inequalities:
      // {x : N x >= 0} = cone(N)^*, and the dual of {y : F y >= 0} is cone(F).
      return facets_of_hull(as_rows(c.vectors()), n);
    case Cone::Form::orthant:
      for (std::size_t i = 0; i < n; ++i) out.push_back(unit(n, i));
      return out;
    case Cone::Form::zero:
      return out;
    case Cone::Form::full:
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(unit(n, i));
        out.push_back(unit(n, i, -1));
      }
      return out;
    case Cone::Form::product: {
      std::size_t at = 0;
      for (const auto& p : c.parts()) {
        append_embedded(out, generators_of(p), at, n);
        at += p.dimension();
      }
      return out;
    }
    default:
      throw UnsupportedError("generators_of: sequence-space cone");
  }
}

/// Normals N with C = {x : N x >= 0}.
inline cone_detail::Rows inequalities_of(const Cone& c) {
  using namespace cone_detail;
  const std::size_t n = c.dimension();
  Rows out;
  switch (c.form()) {
    case Cone::Form::generators:
      return facets_of_hull(as_rows(c.vectors()), n);
    case Cone::Form::inequalities:
      return as_rows(c.vectors());
    case Cone::Form::orthant:
      for (std::size_t i = 0; i < n; ++i) out.push_back(unit(n, i));
      return out;
    case Cone::Form::zero:
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(unit(n, i));
        out.push_back(unit(n, i, -1));
      }
      return out;
    case Cone::Form::full:
      return out;
    case Cone::Form::product: {
      std::size_t at = 0;
      for (const auto& p : c.parts()) {
        append_embedded(out, inequalities_of(p), at, n);
        at += p.dimension();
      }
      return out;
    }
    default:
      throw UnsupportedError("inequalities_of: sequence-space cone");
  }
}

/// Adds constraints forcing the affine forms `expr` (one per coordinate of
/// the ambient space of C) to lie in C. Generator cones introduce fresh
/// multiplier variables.
inline void constrain_member(lp::SystemBuilder& b, const Cone& c, const std::vector<lp::AffineForm>& expr) {
  using lp::AffineForm;
  using lp::Relation;
  if (c.is_sequence()) throw UnsupportedError("constrain_member: sequence-space cone");
  if (expr.size() != c.dimension()) throw ShapeError("constrain_member: expression count does not match the cone");
  const std::size_t n = expr.size();
  switch (c.form()) {
    case Cone::Form::generators: {
      const auto& g = c.vectors();
      std::size_t first = b.add_variables(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) b.add(AffineForm::variable(first + j), Relation::ge);
      for (std::size_t i = 0; i < n; ++i) {
        AffineForm f = expr[i];
        for (std::size_t j = 0; j < g.size(); ++j) f.add_term(first + j, -g[j].entries()[i]);
        b.add(f, Relation::eq);
      }
      return;
    }
    case Cone::Form::inequalities:
      for (const auto& nv : c.vectors()) {
        AffineForm f;
        for (std::size_t i = 0; i < n; ++i)
          if (nv.entries()[i] != 0) f += nv.entries()[i] * expr[i];
        b.add(f, Relation::ge);
      }
      return;
    case Cone::Form::orthant:
      for (const auto& e : expr) b.add(e, Relation::ge);
      return;
    case Cone::Form::zero:
      for (const auto& e : expr) b.add(e, Relation::eq);
      return;
    case Cone::Form::full:
      return;
    case Cone::Form::product: {
      std::size_t at = 0;
      for (const auto& p : c.parts()) {
        std::vector<AffineForm> block(expr.begin() + static_cast<std::ptrdiff_t>(at),
                                      expr.begin() + static_cast<std::ptrdiff_t>(at + p.dimension()));
        constrain_member(b, p, block);
        at += p.dimension();
      }
      return;
    }
    default:
      return;
  }
}

/// Exact membership. Generator cones are decided by LP feasibility of
/// x = sum_i lambda_i g_i, lambda >= 0.
inline bool member(const Cone& c, const Vector& x) {
  cone_detail::check_ambient(c, x);
  switch (c.form()) {
    case Cone::Form::generators: {
      lp::SystemBuilder b;
      std::vector<lp::AffineForm> expr;
      for (const auto& q : x.entries()) expr.push_back(lp::AffineForm::constant_of(q));
      constrain_member(b, c, expr);
      lp::LinearSystem s = b.build();
      return lp::lp_solve(std::vector<Rational>(s.variables()), s, lp::Sense::minimize).status !=
             lp::LPStatus::infeasible;
    }
    case Cone::Form::inequalities:
      for (const auto& nv : c.vectors())
        if (pair(nv, x) < 0) return false;
      return true;
    case Cone::Form::orthant:
      for (const auto& q : x.entries())
        if (q < 0) return false;
      return true;
    case Cone::Form::zero:
      return x.is_zero();
    case Cone::Form::full:
      return true;
    case Cone::Form::product: {
      std::size_t at = 0;
      for (const auto& p : c.parts()) {
        if (!member(p, cone_detail::slice(x, at, p.dimension()))) return false;
        at += p.dimension();
      }
      return true;
    }
    case Cone::Form::sequence_orthant:
      if (x.shape() != Vector::Shape::finite_support) return false;
      for (const auto& [i, q] : x.support())
        if (q < 0) return false;
      return true;
    case Cone::Form::sequence_dual_orthant: {
      if (x.shape() == Vector::Shape::finite_support) {
        for (const auto& [i, q] : x.support())
          if (q < 0) return false;
        return true;
      }
      // Affine tail slope*i + offset is nondecreasing iff slope >= 0; past
      // the last correction only the first uncorrected index matters.
      if (x.slope() < 0) return false;
      std::size_t last = x.support().empty() ? 0 : x.support().rbegin()->first;
      for (std::size_t i = 0; i <= last + 1; ++i)
        if (x.at(i) < 0) return false;
      return true;
    }
  }
  return false;
}

namespace cone_detail {

/// Confirms {x : N x >= 0}^* = cone(N): every facet normal f of cone(N)
/// must satisfy N f >= 0 (so f lies in the primal cone), and every n_j must
/// satisfy the facet description of its own hull.
inline void certify_inequality_dual(const Rows& normals, std::size_t n) {
  Rows facets = facets_of_hull(normals, n);
  for (const auto& f : facets) {
    for (const auto& nv : normals)
      if (dot(nv, f) < 0) throw InternalInconsistency("dual cone certification: facet normal outside the primal cone");
  }
  for (const auto& nv : normals)
    for (const auto& f : facets)
      if (dot(f, nv) < 0) throw InternalInconsistency("dual cone certification: generator violates its hull");
}

}  // namespace cone_detail

/// The dual cone C^* = {y : <x, y> >= 0 for all x in C}.
inline Cone dual_cone(const Cone& c) {
  switch (c.form()) {
    case Cone::Form::generators:
      return Cone::inequalities(c.vectors(), c.dimension());
    case Cone::Form::inequalities:
      cone_detail::certify_inequality_dual(cone_detail::as_rows(c.vectors()), c.dimension());
      return Cone::generators(c.vectors(), c.dimension());
    case Cone::Form::orthant:
      return Cone::orthant(c.dimension());
    case Cone::Form::zero:
      return Cone::full(c.dimension());
    case Cone::Form::full:
      return Cone::zero(c.dimension());
    case Cone::Form::product: {
      std::vector<Cone> parts;
      for (const auto& p : c.parts()) parts.push_back(dual_cone(p));
      return Cone::product(std::move(parts));
    }
    case Cone::Form::sequence_orthant:
      return Cone::sequence_dual_orthant();
    case Cone::Form::sequence_dual_orthant:
      throw UnsupportedError("dual_cone: the dual of R_+^N lies outside the modelled spaces");
  }
  return c;
}

inline Cone bidual_cone(const Cone& c) {
  if (c.is_sequence()) throw UnsupportedError("bidual_cone: finite-dimensional cones only");
  return dual_cone(dual_cone(c));
}

/// B is a subset of A.
inline bool contains(const Cone& a, const Cone& b) {
  if (a.dimension() != b.dimension()) throw ShapeError("contains: cones live in different dimensions");
  auto normals = inequalities_of(a);
  for (const auto& g : generators_of(b))
    for (const auto& nv : normals)
      if (cone_detail::dot(nv, g) < 0) return false;
  return true;
}

inline bool cone_equal(const Cone& a, const Cone& b) { return contains(a, b) && contains(b, a); }

/// C has nonempty interior: some x satisfies every nonzero defining
/// normal strictly.
inline bool full_dimensional(const Cone& c) {
  auto normals = cone_detail::dedup(inequalities_of(c));
  if (normals.empty()) return true;
  lp::LinearSystem s(c.dimension());
  for (auto& nv : normals) s.add(std::move(nv), lp::Relation::gt, 0);
  return !lp::fm_infeasible(s);
}

/// Algebraic core membership. In finite dimensions the core is the
/// interior: full dimensionality plus strict satisfaction of every nonzero
/// defining normal. R_+^(N) has empty core in R^(N).
inline bool core_member(const Cone& c, const Vector& x) {
  cone_detail::check_ambient(c, x);
  switch (c.form()) {
    case Cone::Form::sequence_orthant:
      return false;
    case Cone::Form::sequence_dual_orthant:
      throw UnsupportedError("core_member: R_+^N");
    case Cone::Form::product: {
      std::size_t at = 0;
      for (const auto& p : c.parts()) {
        if (!core_member(p, cone_detail::slice(x, at, p.dimension()))) return false;
        at += p.dimension();
      }
      return true;
    }
    default:
      break;
  }
  auto normals = cone_detail::dedup(inequalities_of(c));
  for (const auto& nv : normals)
    if (cone_detail::dot(nv, x.entries()) <= 0) return false;
  return full_dimensional(c);
}

}  // namespace conicdual
