#pragma once

// Exact integer and rational arithmetic: Bezout pairs, modular inverses and
// "n/d" string conversion. Everything is arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "hjtoric/errors.hpp"

namespace hjtoric {

// Expression templates off: values behave like plain value types under auto.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                                   boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

struct Bezout {
  Integer g;
  Integer x;
  Integer y;

  friend bool operator==(const Bezout&, const Bezout&) = default;
};

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  if (m <= 0) throw DomainError("modulus must be positive");
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs_value(a), y = abs_value(b);
  while (y != 0) {
    Integer t = x % y;
    x = std::move(y);
    y = std::move(t);
  }
  return x;
}

/// g = gcd(a, b) > 0 with a*x + b*y = g. When b != 0 the pair is normalized
/// so that 0 <= x < |b|/g.
inline Bezout ext_gcd(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) throw DomainError("ext_gcd: both arguments are zero");

  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer quot = old_r / r;
    Integer next_r = old_r - quot * r;
    old_r = std::move(r);
    r = std::move(next_r);
    Integer next_s = old_s - quot * s;
    old_s = std::move(s);
    s = std::move(next_s);
  }
  Integer g = old_r, x = old_s;
  if (g < 0) {
    g = -g;
    x = -x;
  }
  if (b == 0) return {g, x, 0};

  x = mod(x, abs_value(b) / g);
  Integer y = (g - a * x) / b;
  return {g, x, y};
}

/// x in [1, m-1] with a*x = 1 (mod m).
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m < 2) throw DomainError("mod_inverse: modulus must be at least 2");
  Bezout b = ext_gcd(mod(a, m), m);
  if (b.g != 1) throw DomainError("mod_inverse: " + a.str() + " is not invertible mod " + m.str());
  return b.x;
}

/// Always "n/d" with d > 0, so 3 is rendered "3/1".
inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline std::string to_string(const Integer& n) { return n.str(); }

namespace detail {

inline Integer parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw DomainError("malformed integer '" + std::string(s) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw DomainError("malformed integer '" + std::string(s) + "'");
  }
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  return Integer(text);
}

}  // namespace detail

/// Accepts "n", "n/d" (d != 0), with optional surrounding blanks. No decimal points.
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
  Integer num = detail::parse_integer(s.substr(0, slash));
  Integer den = detail::parse_integer(s.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Integer parse_integer(std::string_view s) {
  Rational q = parse_rational(s);
  if (boost::multiprecision::denominator(q) != 1) {
    throw DomainError("expected an integer, got '" + std::string(s) + "'");
  }
  return boost::multiprecision::numerator(q);
}

}  // namespace hjtoric
