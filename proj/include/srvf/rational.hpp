#pragma once

// Exact rational arithmetic for the pieces of the construction that must not
// drift: Cantor-set endpoints, measures, and the explicit lower-bound values.
// Doubles are dyadic rationals, so conversions in are exact; conversions out
// round once.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace srvf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational: non-finite value");
  return Rational(x);  // exact: doubles are dyadic
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// 2^-e and 4^-e as exact rationals.
inline Rational pow2_inv(unsigned e) {
  return Rational(1, BigInt(1) << e);
}

inline Rational pow4_inv(unsigned e) {
  return Rational(1, BigInt(1) << (2 * e));
}

inline std::string to_string(const Rational& r) {
  return r.str();  // "num/den", or just "num" for integers
}

inline Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("rational: cannot parse '" + s + "'");
  }
}

}  // namespace srvf
