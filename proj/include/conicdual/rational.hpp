#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "conicdual/error.hpp"

namespace conicdual {

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator (GMP canonicalizes after every operation).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw PreconditionError("zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline int sign(const Rational& q) { return q.sign(); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

inline Integer floor_int(const Rational& q) {
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n.sign() < 0 && f * d != n) f -= 1;
  return f;
}

inline Integer ceil_int(const Rational& q) {
  Integer f = floor_int(q);
  return Rational(f) == q ? f : Integer(f + 1);
}

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// "p/q", or "p" when q = 1, with a leading '-' for negatives.
inline std::string to_string(const Rational& q) {
  const Integer& n = boost::multiprecision::numerator(q);
  const Integer& d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}
}  // namespace detail

/// Parses the ASCII form produced by to_string. Non-canonical input such as
/// "2/4" or "-0" is accepted and normalized.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den))
    throw PreconditionError("malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

}  // namespace conicdual
