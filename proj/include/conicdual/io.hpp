#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "conicdual/conditions.hpp"
#include "conicdual/farkas.hpp"
#include "conicdual/gale.hpp"
#include "conicdual/perturb.hpp"
#include "conicdual/problem.hpp"

namespace conicdual {

// Problem files are YAML documents:
//
//   kind: finite                     kind: gale
//   spaces: {x: 2, z: 1}             gale: {alpha: "1", beta: "0"}
//   A: [["1", "1"]]
//   b: ["2"]
//   c: ["1", "2"]
//   P: {form: orthant, data: 2}
//   Q: {form: generators, dim: 1, data: [["1"]]}
//
// Cone records: orthant/zero/full carry their dimension as `data`;
// generators/inequalities carry rows in `data` plus `dim`; product carries
// a list of cone records. Every rational is a "p/q" scalar.

namespace io_detail {

[[noreturn]] inline void fail_at(const YAML::Node& n, const std::string& msg) {
  const YAML::Mark m = n.Mark();
  throw ParseError(msg, m.line + 1, m.column + 1);
}

inline void expect_map(const YAML::Node& n, const std::string& what) {
  if (!n.IsMap()) fail_at(n, what + " must be a mapping");
}

/// Rejects keys outside `allowed`, pointing at the offending key.
inline void only_keys(const YAML::Node& n, std::initializer_list<const char*> allowed) {
  for (const auto& kv : n) {
    const std::string key = kv.first.Scalar();
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail_at(kv.first, "unknown key '" + key + "'");
  }
}

inline const YAML::Node require(const YAML::Node& map, const char* key) {
  YAML::Node n = map[key];
  if (!n) fail_at(map, std::string("missing key '") + key + "'");
  return n;
}

inline Rational rational(const YAML::Node& n) {
  if (!n.IsScalar()) fail_at(n, "expected a rational \"p/q\"");
  try {
    return parse_rational(n.Scalar());
  } catch (const Error& e) {
    fail_at(n, e.what());
  }
}

inline std::size_t count(const YAML::Node& n) {
  if (!n.IsScalar() || !detail::all_digits(n.Scalar())) fail_at(n, "expected a nonnegative integer");
  return std::stoul(n.Scalar());
}

inline Vector vector(const YAML::Node& n) {
  if (!n.IsSequence()) fail_at(n, "expected a list of rationals");
  std::vector<Rational> v;
  for (const auto& e : n) v.push_back(rational(e));
  return Vector::dense(std::move(v));
}

inline Cone cone(const YAML::Node& n) {
  expect_map(n, "cone record");
  only_keys(n, {"form", "dim", "data"});
  const YAML::Node form = require(n, "form");
  const std::string f = form.Scalar();
  if (f == "orthant" || f == "zero" || f == "full") {
    std::size_t d = count(require(n, "data"));
    return f == "orthant" ? Cone::orthant(d) : f == "zero" ? Cone::zero(d) : Cone::full(d);
  }
  if (f == "generators" || f == "inequalities") {
    const YAML::Node data = require(n, "data");
    if (!data.IsSequence()) fail_at(data, "expected a list of vectors");
    std::vector<Vector> rows;
    for (const auto& r : data) rows.push_back(vector(r));
    std::size_t d;
    if (n["dim"])
      d = count(n["dim"]);
    else if (!rows.empty())
      d = rows[0].dimension();
    else
      fail_at(n, "an empty " + f + " list needs 'dim'");
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].dimension() != d) fail_at(data[i], "expected " + std::to_string(d) + " entries");
    return f == "generators" ? Cone::generators(std::move(rows), d) : Cone::inequalities(std::move(rows), d);
  }
  if (f == "product") {
    const YAML::Node data = require(n, "data");
    if (!data.IsSequence()) fail_at(data, "expected a list of cone records");
    std::vector<Cone> parts;
    for (const auto& c : data) parts.push_back(cone(c));
    return Cone::product(std::move(parts));
  }
  fail_at(form, "unknown cone form '" + f + "'");
}

inline void emit(YAML::Emitter& out, const Vector& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& q : v.entries()) out << YAML::DoubleQuoted << to_string(q);
  out << YAML::EndSeq;
}

inline void emit(YAML::Emitter& out, const Cone& c) {
  out << YAML::BeginMap;
  switch (c.form()) {
    case Cone::Form::orthant:
    case Cone::Form::zero:
    case Cone::Form::full:
      out << YAML::Key << "form" << YAML::Value
          << (c.form() == Cone::Form::orthant ? "orthant" : c.form() == Cone::Form::zero ? "zero" : "full");
      out << YAML::Key << "data" << YAML::Value << c.dimension();
      break;
    case Cone::Form::generators:
    case Cone::Form::inequalities:
      out << YAML::Key << "form" << YAML::Value
          << (c.form() == Cone::Form::generators ? "generators" : "inequalities");
      out << YAML::Key << "dim" << YAML::Value << c.dimension();
      out << YAML::Key << "data" << YAML::Value << YAML::BeginSeq;
      for (const auto& v : c.vectors()) emit(out, v);
      out << YAML::EndSeq;
      break;
    case Cone::Form::product:
      out << YAML::Key << "form" << YAML::Value << "product";
      out << YAML::Key << "data" << YAML::Value << YAML::BeginSeq;
      for (const auto& part : c.parts()) emit(out, part);
      out << YAML::EndSeq;
      break;
    case Cone::Form::sequence_orthant:
    case Cone::Form::sequence_dual_orthant:
      throw UnsupportedError("sequence-space cones are implied by kind: gale and are not serialized");
  }
  out << YAML::EndMap;
}

}  // namespace io_detail

inline Problem parse_problem(const std::string& text) {
  using namespace io_detail;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root) throw ParseError("empty problem file", 1, 1);
  expect_map(root, "problem file");
  const std::string kind = require(root, "kind").Scalar();
  if (kind == "gale") {
    only_keys(root, {"kind", "gale"});
    const YAML::Node g = require(root, "gale");
    expect_map(g, "gale");
    only_keys(g, {"alpha", "beta"});
    return Problem::gale(rational(require(g, "alpha")), rational(require(g, "beta")));
  }
  if (kind != "finite") fail_at(root["kind"], "kind must be 'finite' or 'gale'");
  only_keys(root, {"kind", "spaces", "A", "b", "c", "P", "Q"});
  const YAML::Node an = require(root, "A");
  if (!an.IsSequence()) fail_at(an, "A must be a list of rows");
  std::vector<Vector> rows;
  for (const auto& r : an) rows.push_back(vector(r));
  std::size_t cols = rows.empty() ? 0 : rows[0].dimension();
  if (const YAML::Node sp = root["spaces"]) {
    expect_map(sp, "spaces");
    only_keys(sp, {"x", "z"});
    std::size_t x = count(require(sp, "x")), z = count(require(sp, "z"));
    if (!rows.empty() && (x != cols || z != rows.size()))
      throw ValidationError("spaces", "declared x=" + std::to_string(x) + ", z=" + std::to_string(z) + " but A is " +
                                          std::to_string(rows.size()) + "x" + std::to_string(cols));
    if (rows.empty()) cols = x;
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].dimension() != cols) throw ValidationError("A", "row " + std::to_string(i) + " has the wrong length");
  return Problem::finite(LinearMap::matrix(std::move(rows), cols), vector(require(root, "b")),
                         vector(require(root, "c")), cone(require(root, "P")), cone(require(root, "Q")));
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

inline std::string render_problem(const Problem& p) {
  using io_detail::emit;
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (p.is_gale()) {
    out << YAML::Key << "kind" << YAML::Value << "gale";
    out << YAML::Key << "gale" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "alpha" << YAML::Value << YAML::DoubleQuoted << to_string(p.alpha());
    out << YAML::Key << "beta" << YAML::Value << YAML::DoubleQuoted << to_string(p.beta());
    out << YAML::EndMap;
  } else {
    out << YAML::Key << "kind" << YAML::Value << "finite";
    out << YAML::Key << "spaces" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "x" << YAML::Value << p.x_dim() << YAML::Key << "z" << YAML::Value << p.z_dim();
    out << YAML::EndMap;
    out << YAML::Key << "A" << YAML::Value << YAML::BeginSeq;
    for (const auto& r : p.A().rows()) emit(out, r);
    out << YAML::EndSeq;
    out << YAML::Key << "b" << YAML::Value;
    emit(out, p.b());
    out << YAML::Key << "c" << YAML::Value;
    emit(out, p.c());
    out << YAML::Key << "P" << YAML::Value;
    emit(out, p.P());
    out << YAML::Key << "Q" << YAML::Value;
    emit(out, p.Q());
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

/// A perturbation given on the command line: "0" for the zero vector,
/// otherwise comma-separated rationals. For gale problems a y list is the
/// finitely supported sequence (y_0, y_1, ...).
inline Vector parse_perturbation(const Problem& p, const std::string& text, bool is_y) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    v.push_back(parse_rational(item));
  }
  if (v.size() == 1 && v[0] == 0) return is_y ? p.zero_y() : p.zero_z();
  if (is_y && p.is_gale()) {
    Vector::Support s;
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i];
    return Vector::finite_support(std::move(s));
  }
  Vector out = Vector::dense(std::move(v));
  if (is_y)
    p.check_y(out);
  else
    p.check_z(out);
  return out;
}

/// Ordered tree of named results. Rendered as YAML for machines and as an
/// indented table for humans; the YAML form parses back to an equal tree.
class Report {
 public:
  enum class Kind { scalar, list, map };

  Report() : kind_(Kind::map) {}
  static Report scalar(std::string s) {
    Report r;
    r.kind_ = Kind::scalar;
    r.text_ = std::move(s);
    return r;
  }
  static Report list(std::vector<Report> items) {
    Report r;
    r.kind_ = Kind::list;
    r.items_ = std::move(items);
    return r;
  }

  Report& set(std::string key, Report v) {
    fields_.emplace_back(std::move(key), std::move(v));
    return *this;
  }
  Report& set(std::string key, std::string v) { return set(std::move(key), scalar(std::move(v))); }
  Report& set(std::string key, const char* v) { return set(std::move(key), scalar(v)); }
  Report& set(std::string key, bool v) { return set(std::move(key), scalar(v ? "true" : "false")); }
  Report& set(std::string key, std::size_t v) { return set(std::move(key), scalar(std::to_string(v))); }

  Kind kind() const noexcept { return kind_; }
  const std::string& text() const noexcept { return text_; }
  const std::vector<Report>& items() const noexcept { return items_; }
  const std::vector<std::pair<std::string, Report>>& fields() const noexcept { return fields_; }

  const Report& at(const std::string& key) const {
    for (const auto& [k, v] : fields_)
      if (k == key) return v;
    throw PreconditionError("report has no field '" + key + "'");
  }
  bool has(const std::string& key) const {
    for (const auto& kv : fields_)
      if (kv.first == key) return true;
    return false;
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.kind_ == b.kind_ && a.text_ == b.text_ && a.items_ == b.items_ && a.fields_ == b.fields_;
  }

  std::string yaml() const {
    YAML::Emitter out;
    emit(out);
    return std::string(out.c_str()) + "\n";
  }

  std::string human() const {
    std::string s;
    write_human(s, 0);
    return s;
  }

  static Report parse(const std::string& text) {
    try {
      return from_node(YAML::Load(text));
    } catch (const YAML::ParserException& e) {
      throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
  }

 private:
  void emit(YAML::Emitter& out) const {
    switch (kind_) {
      case Kind::scalar:
        out << YAML::DoubleQuoted << text_;
        break;
      case Kind::list: {
        bool flat = true;
        for (const auto& i : items_) flat = flat && i.kind_ == Kind::scalar;
        if (flat) out << YAML::Flow;
        out << YAML::BeginSeq;
        for (const auto& i : items_) i.emit(out);
        out << YAML::EndSeq;
        break;
      }
      case Kind::map:
        out << YAML::BeginMap;
        for (const auto& [k, v] : fields_) {
          out << YAML::Key << k << YAML::Value;
          v.emit(out);
        }
        out << YAML::EndMap;
        break;
    }
  }

  static Report from_node(const YAML::Node& n) {
    if (!n || n.IsNull()) return Report();
    if (n.IsScalar()) return scalar(n.Scalar());
    if (n.IsSequence()) {
      std::vector<Report> items;
      for (const auto& e : n) items.push_back(from_node(e));
      return list(std::move(items));
    }
    Report r;
    for (const auto& kv : n) r.set(kv.first.Scalar(), from_node(kv.second));
    return r;
  }

  std::string inline_text() const {
    if (kind_ == Kind::scalar) return text_;
    std::string s = "(";
    for (std::size_t i = 0; i < items_.size(); ++i) s += (i ? ", " : "") + items_[i].inline_text();
    return s + ")";
  }

  bool is_inline() const {
    if (kind_ == Kind::map) return false;
    if (kind_ == Kind::scalar) return true;
    for (const auto& i : items_)
      if (!i.is_inline()) return false;
    return true;
  }

  void write_human(std::string& s, std::size_t indent) const {
    std::size_t width = 0;
    for (const auto& kv : fields_) width = std::max(width, kv.first.size());
    for (const auto& [k, v] : fields_) {
      s += std::string(indent, ' ') + k;
      if (v.is_inline()) {
        s += std::string(width - k.size() + 2, ' ') + v.inline_text() + "\n";
      } else if (v.kind_ == Kind::map) {
        s += "\n";
        v.write_human(s, indent + 2);
      } else {
        s += "\n";
        for (const auto& item : v.items_) {
          if (item.is_inline()) {
            s += std::string(indent + 2, ' ') + "- " + item.inline_text() + "\n";
          } else {
            s += std::string(indent + 2, ' ') + "-\n";
            item.write_human(s, indent + 4);
          }
        }
      }
    }
  }

  Kind kind_;
  std::string text_;
  std::vector<Report> items_;
  std::vector<std::pair<std::string, Report>> fields_;
};

// Conversions of result types into report trees.

inline Report to_report(const Vector& v) {
  if (v.is_dense()) {
    std::vector<Report> items;
    for (const auto& q : v.entries()) items.push_back(Report::scalar(to_string(q)));
    return Report::list(std::move(items));
  }
  if (v.shape() == Vector::Shape::finite_support) {
    Report r;
    for (const auto& [i, q] : v.support()) r.set(std::to_string(i), to_string(q));
    return r;
  }
  return Report::scalar(v.str());
}

inline Report to_report(const Extended& e) { return Report::scalar(e.str()); }

inline Report to_report(const ExtendedValue& v) {
  Report r;
  r.set("value", v.value.str());
  r.set("attained", v.attained);
  if (v.witness) r.set("witness", to_report(*v.witness));
  if (v.feasible_point) r.set("feasible_point", to_report(*v.feasible_point));
  if (v.ray) r.set("ray", to_report(*v.ray));
  return r;
}

inline Report to_report(const SetPoint& p) {
  Report r;
  r.set("base", to_report(p.base));
  r.set("height", to_string(p.height));
  return r;
}

inline Report to_report(const Gap& g) {
  Report r;
  r.set("kind", gap_name(g.kind));
  if (g.kind == GapKind::positive) r.set("amount", to_string(g.amount));
  return r;
}

inline Report to_report(const DualityReport& d) {
  Report r;
  r.set("primal", to_report(d.primal));
  r.set("dual", to_report(d.dual));
  r.set("gap", to_report(d.gap));
  r.set("slice_condition", d.slice_condition);
  r.set("slice_nonempty", d.slice_nonempty);
  r.set("consistent", d.consistent);
  r.set("biconditional", d.biconditional ? (*d.biconditional ? "true" : "false") : "not-asserted");
  return r;
}

inline Report to_report(const FarkasVerdict& v) {
  Report r;
  r.set("a_holds", v.a_holds);
  r.set("b_holds", v.b_holds);
  r.set("equivalent", v.equivalent);
  if (v.a_failure) r.set("certificate_a_fail", to_report(*v.a_failure));
  if (v.b_witness) r.set("certificate_b", to_report(*v.b_witness));
  return r;
}

inline Report to_report(const SliceReport& s) {
  Report r;
  r.set("equal", s.equal);
  r.set("nonempty", s.nonempty);
  r.set("value", s.value.str());
  if (s.witness) r.set("witness", to_report(*s.witness));
  return r;
}

inline Report to_report(const Separator& s) {
  Report r;
  r.set("functional", to_report(s.functional));
  r.set("beta", to_string(s.beta));
  r.set("gamma", to_string(s.gamma));
  return r;
}

inline Report to_report(const ConditionVerdict& v) {
  Report r;
  r.set("holds", tri_name(v.holds));
  r.set("justification", justification_name(v.justification));
  if (v.witness) r.set("witness", to_report(*v.witness));
  r.set("samples", v.samples);
  r.set("violations", v.violations.size());
  return r;
}

inline Report to_report(const CoreCheck& c) {
  Report r;
  r.set("holds", c.holds);
  r.set("optimum", c.optimum.str());
  if (c.witness) r.set("witness", to_report(*c.witness));
  return r;
}

inline Report to_report(const SufficiencyReport& s) {
  Report r;
  Report premises;
  for (const auto& [name, ok] : s.premises) premises.set(name, ok);
  r.set("premises", premises);
  r.set("conclusion_checked", s.conclusion_checked);
  r.set("samples", s.samples);
  r.set("violations", s.violations.size());
  return r;
}

}  // namespace conicdual
