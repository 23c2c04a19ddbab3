#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sigrig {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational(long long num, long long den = 1) {
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace sigrig
