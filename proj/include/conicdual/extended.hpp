#pragma once

#include <compare>
#include <string>

#include "conicdual/rational.hpp"

namespace conicdual {

/// A value in the extended reals [-inf, +inf] with an exact finite part.
class Extended {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  Extended() = default;
  Extended(Rational v) : kind_(Kind::finite), value_(std::move(v)) {}  // NOLINT: implicit by intent
  Extended(int v) : kind_(Kind::finite), value_(v) {}                  // NOLINT

  static Extended neg_inf() { return Extended(Kind::neg_inf); }
  static Extended pos_inf() { return Extended(Kind::pos_inf); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::neg_inf; }

  const Rational& value() const {
    if (!is_finite()) throw PreconditionError("value() of an infinite extended real");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "-inf", "+inf", or the rational's "p/q" form.
  std::string str() const {
    switch (kind_) {
      case Kind::neg_inf:
        return "-inf";
      case Kind::pos_inf:
        return "+inf";
      case Kind::finite:
        return to_string(value_);
    }
    return {};
  }

  static Extended parse(const std::string& s) {
    if (s == "-inf") return neg_inf();
    if (s == "+inf" || s == "inf") return pos_inf();
    return Extended(parse_rational(s));
  }

 private:
  explicit Extended(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  Rational value_;
};

}  // namespace conicdual
