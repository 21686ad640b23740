#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace sobmor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact conversion: every finite double is a binary rational.
inline Rational rational_from_double(double x) {
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);  // |m| in [0.5, 1)
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mant);
  if (e > 0)
    r *= Rational(BigInt(1) << e);
  else if (e < 0)
    r /= Rational(BigInt(1) << -e);
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// floor(x^(1/k)) for nonnegative integer x, k >= 1.
inline BigInt floor_kth_root(const BigInt& x, unsigned k) {
  if (x <= 1 || k == 1) return x;
  BigInt lo = 0, hi = BigInt(1) << (static_cast<unsigned>(msb(x)) / k + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (pow(mid, k) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// floor(2^(num/den)) computed exactly, num >= 0, den >= 1.
inline BigInt floor_exp2_rational(long long num, long long den) {
  const long long whole = num / den;
  const long long frac = num % den;
  BigInt base = BigInt(1) << whole;
  if (frac == 0) return base;
  // floor(2^(w + f/d)) = floor((2^(w*d + f))^(1/d))
  return floor_kth_root(BigInt(1) << (whole * den + frac),
                        static_cast<unsigned>(den));
}

}  // namespace sobmor
