#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "pms/errors.hpp"

namespace pms {

// Exact arithmetic backend for rational mode.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double zero() { return 0.0; }
  static double tolerance() { return 1e-12; }
  static double to_double(double v) { return v; }
  static bool is_finite(double v) { return std::isfinite(v); }
  static std::string name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational zero() { return Rational(0); }
  static Rational tolerance() { return Rational(0); }
  static double to_double(const Rational& v) { return v.template convert_to<double>(); }
  static bool is_finite(const Rational&) { return true; }
  static std::string name() { return "rational"; }
};

template <typename T>
double to_double(const T& v) {
  return scalar_traits<T>::to_double(v);
}

template <typename T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

// Collapse boost expression templates before taking the absolute value.
template <typename Tag, typename A1, typename A2, typename A3, typename A4>
Rational abs_value(const boost::multiprecision::detail::expression<Tag, A1, A2, A3, A4>& e) {
  Rational v(e);
  return v < 0 ? Rational(-v) : v;
}

// Fraction constructor usable for both backends: frac<T>(1, 100) is exact for
// Rational and the correctly rounded double otherwise.
template <typename T>
T frac(long num, long den) {
  return T(num) / T(den);
}

inline std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1)
    os << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

// Accepts "n", "n/d" and plain decimal strings ("0.25", "-3.5e2").
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw domain_error("rational with zero denominator: " + text);
    return Rational(num, den);
  }
  if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
      text.find('E') == std::string::npos) {
    return Rational(BigInt(text));
  }
  // Decimal / scientific notation: mantissa scaled by a power of ten.
  std::string digits;
  long exp10 = 0;
  bool neg = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw domain_error("bad rational literal: " + text);
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      exp10 += std::stol(text.substr(i + 1));
      break;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) --exp10;
    } else {
      throw domain_error("bad rational literal: " + text);
    }
  }
  if (digits.empty()) throw domain_error("bad rational literal: " + text);
  // strip leading zeros: cpp_int would read them as an octal prefix
  auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  BigInt mant(digits);
  if (neg) mant = -mant;
  Rational out(mant);
  BigInt pow10 = 1;
  for (long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) pow10 *= 10;
  if (exp10 >= 0)
    out *= Rational(pow10);
  else
    out /= Rational(pow10);
  return out;
}

// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw domain_error("non-finite value has no rational form");
  Rational out(v);
  return out;
}

}  // namespace pms
