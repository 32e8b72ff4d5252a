#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace charvar {

/// Arbitrary-precision signed integer.
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in lowest terms by the backend.
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for non-negative integer exponents.
inline BigInt int_pow(BigInt base, unsigned long long exp) {
  BigInt out = 1;
  while (exp != 0) {
    if (exp & 1ull) out *= base;
    base *= base;
    exp >>= 1ull;
  }
  return out;
}

inline Rational rational_pow(Rational base, unsigned long long exp) {
  Rational out = 1;
  while (exp != 0) {
    if (exp & 1ull) out *= base;
    base *= base;
    exp >>= 1ull;
  }
  return out;
}

/// "3", "-7", "1/2", "-5/8" — denominator printed only when it is not 1.
inline std::string rational_to_string(const Rational& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) {
    out += "/";
    out += denominator(x).str();
  }
  return out;
}

}  // namespace charvar
