#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <tuple>

#include "idempotoric/error.hpp"

namespace idempotoric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a,
                                                          const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_x = 1, x = 0;
  Integer old_y = 0, y = 1;
  while (r != 0) {
    Integer q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, Integer(old_r - q * r));
    std::tie(old_x, x) = std::make_tuple(x, Integer(old_x - q * x));
    std::tie(old_y, y) = std::make_tuple(y, Integer(old_y - q * y));
  }
  if (old_r < 0) return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

/// Quotient rounded toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// Canonical "p/q" in lowest terms with q > 0; integers print without "/1".
inline std::string to_string(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {
inline bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
}  // namespace detail

inline Integer parse_integer(std::string_view s) {
  if (!detail::is_decimal_integer(s))
    throw ValidationError("not an integer: \"" + std::string(s) + "\"");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits);
}

/// Accepts "p" or "p/q" with decimal integers; q must be positive after
/// sign normalization and nonzero.
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  std::string_view den_text = s.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-'))
    throw ValidationError("denominator must be unsigned: \"" + std::string(s) +
                          "\"");
  Integer den = parse_integer(den_text);
  if (den == 0)
    throw ValidationError("zero denominator: \"" + std::string(s) + "\"");
  return Rational(num, den);
}

}  // namespace idempotoric
