#pragma once
/// @file rational.hpp
/// @brief Exact integer and rational scalars plus the ring-traits customization point.
///
/// All arithmetic in the library is exact.  `Rational` is an arbitrary-precision
/// fraction kept eagerly in lowest terms with positive denominator — equality is
/// representational equality, so results of independent computations can be
/// compared with `==` and no tolerances exist anywhere.

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "immgeo/errors.hpp"

namespace immgeo {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Ring constants and predicates for a scalar type `R`.  Specialized for every
/// scalar the generic matrix/determinant code runs over.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  [[nodiscard]] static Rational zero() { return Rational(0); }
  [[nodiscard]] static Rational one() { return Rational(1); }
  [[nodiscard]] static bool is_zero(const Rational& x) { return x.is_zero(); }
  [[nodiscard]] static bool is_one(const Rational& x) { return x == 1; }
};

[[nodiscard]] inline Int numerator(const Rational& x) {
  return boost::multiprecision::numerator(x);
}

[[nodiscard]] inline Int denominator(const Rational& x) {
  return boost::multiprecision::denominator(x);
}

namespace detail {

/// Strict decimal integer: optional sign then digits only.  Rejects hex/octal
/// prefixes, whitespace, and empty strings that the multiprecision constructor
/// would silently accept or misread.
[[nodiscard]] inline Int parse_int_strict(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw InputError("not an integer: '" + text + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw InputError("not an integer: '" + text + "'");
    }
  }
  const Int magnitude(text.substr(i));
  return negative ? Int(-magnitude) : magnitude;
}

}  // namespace detail

/// Parses "p" or "p/q" into an exact rational.  Signs are allowed on either
/// part; the result is normalized (lowest terms, positive denominator).
/// Throws InputError on malformed text or zero denominator.
[[nodiscard]] inline Rational parse_rational(const std::string& text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(detail::parse_int_strict(text));
  }
  Int num = detail::parse_int_strict(text.substr(0, slash));
  Int den = detail::parse_int_strict(text.substr(slash + 1));
  if (den.is_zero()) throw InputError("zero denominator: '" + text + "'");
  if (den < 0) {  // the rational constructor requires a positive denominator
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Renders in lowest terms as "p" (integer) or "p/q" (q > 1).
[[nodiscard]] inline std::string to_string(const Rational& x) {
  const Int den = denominator(x);
  if (den == 1) return numerator(x).str();
  return numerator(x).str() + "/" + den.str();
}

}  // namespace immgeo
