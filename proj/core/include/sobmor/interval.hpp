#pragma once

#include <cmath>
#include <limits>

namespace sobmor {

// Outward-rounded interval helpers for certifying strict inequalities on
// floating-point schedule arithmetic. Residuals from fma/TwoSum keep exact
// operations tight (0.5 * 4 stays the point [2, 2]), so certifications with
// genuine equality margins (g_k = 4 at the first block) still pass.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  static Bracket point(double x) { return {x, x}; }
};

inline double step_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double step_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

namespace detail {

inline double round_side(double v, double err, bool up) {
  if (err == 0.0) return v;
  if (up) return err > 0.0 ? step_up(v) : v;
  return err < 0.0 ? step_down(v) : v;
}

inline double prod_side(double a, double b, bool up) {
  const double v = a * b;
  return round_side(v, std::fma(a, b, -v), up);
}

inline double sum_side(double a, double b, bool up) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return round_side(s, err, up);
}

}  // namespace detail

inline Bracket badd(const Bracket& a, const Bracket& b) {
  return {detail::sum_side(a.lo, b.lo, false),
          detail::sum_side(a.hi, b.hi, true)};
}

// nonnegative operands only
inline Bracket bmul(const Bracket& a, const Bracket& b) {
  return {detail::prod_side(a.lo, b.lo, false),
          detail::prod_side(a.hi, b.hi, true)};
}

inline Bracket bmul(double a, const Bracket& b) {
  return bmul(Bracket::point(a), b);
}

// a - b for doubles, as a bracket
inline Bracket bsub(double a, double b) {
  return {detail::sum_side(a, -b, false), detail::sum_side(a, -b, true)};
}

// exp2 over a bracket; exact for integral point exponents, otherwise padded
// by two ulps for the libm rounding.
inline Bracket bexp2(const Bracket& x) {
  if (x.lo == x.hi && x.lo == std::floor(x.lo) && std::abs(x.lo) < 1022.0) {
    const double v = std::ldexp(1.0, static_cast<int>(x.lo));
    return {v, v};
  }
  return {step_down(step_down(std::exp2(x.lo))),
          step_up(step_up(std::exp2(x.hi)))};
}

}  // namespace sobmor
