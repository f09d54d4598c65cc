#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "plcmarket/error.hpp"

namespace plcmarket {

/// Exact rational, always held in canonical form (reduced, positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RationalVector = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw Error(Errc::ZeroDenominator, "rat(" + std::to_string(num) + ", 0)");
  return Rational(num) / Rational(den);
}

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace detail {

inline bool parse_integer(std::string_view text, Integer& out, bool allow_sign) {
  if (text.empty()) return false;
  std::size_t start = 0;
  if (text[0] == '-' || text[0] == '+') {
    if (!allow_sign) return false;
    start = 1;
  }
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  out = Integer(digits);
  return true;
}

}  // namespace detail

/// Parses "num/den" or "num". Unreduced input is reduced; a zero or signed
/// denominator is rejected.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num;
  Integer den = 1;
  if (slash == std::string_view::npos) {
    if (!detail::parse_integer(text, num, true))
      throw Error(Errc::BadRational, "cannot parse '" + std::string(text) + "'");
  } else {
    if (!detail::parse_integer(text.substr(0, slash), num, true) ||
        !detail::parse_integer(text.substr(slash + 1), den, false))
      throw Error(Errc::BadRational, "cannot parse '" + std::string(text) + "'");
    if (den == 0)
      throw Error(Errc::ZeroDenominator, "'" + std::string(text) + "' has denominator 0");
  }
  return Rational(num, den);
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline Rational sum(const RationalVector& v) {
  Rational total = 0;
  for (const auto& q : v) total += q;
  return total;
}

/// Integer power of a rational with a non-negative exponent.
inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace plcmarket
