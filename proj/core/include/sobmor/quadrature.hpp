#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace sobmor {

// Gauss 7 / Kronrod 15 rule on [a,b]. Returns the K15 estimate, writes a
// conservative error estimate into err.
template <class F>
double gk15(const F& f, double a, double b, double& err) {
  static const double nw[8][3] = {
      {0.000000000000000, 0.417959183673469, 0.209482141084728},
      {0.405845151377397, 0.381830050505119, 0.190350578064785},
      {0.741531185599394, 0.279705391489277, 0.140653259715525},
      {0.949107912342759, 0.129484966168870, 0.063092092629979},
      {0.207784955007898, 0.0, 0.204432940075298},
      {0.586087235467691, 0.0, 0.169004726639267},
      {0.864864423359769, 0.0, 0.104790010322250},
      {0.991455371120813, 0.0, 0.022935322010529}};

  const double c = 0.5 * (a + b);
  const double m = 0.5 * (b - a);

  const double y0 = f(c);
  double g7 = nw[0][1] * y0;
  double k15 = nw[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = m * nw[i][0];
    const double yi = f(c + dx) + f(c - dx);
    g7 += nw[i][1] * yi;
    k15 += nw[i][2] * yi;
  }
  g7 *= m;
  k15 *= m;

  err = std::abs(g7 - k15);
  err = 200.0 * err * std::sqrt(err > 0 ? err : 0.0);
  if (!(err > 0)) err = std::abs(k15) * 1e-16;
  return k15;
}

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 20000;
};

namespace detail {
struct QuadPiece {
  double a, b, value, err;
  bool operator<(const QuadPiece& o) const { return err < o.err; }
};
}  // namespace detail

// Globally adaptive bisection: keeps splitting the interval with the largest
// error estimate until the total estimate meets the tolerance.
template <class F>
double integrate(const F& f, double a, double b, QuadOptions opt = {}) {
  if (a == b) return 0.0;
  std::priority_queue<detail::QuadPiece> pieces;
  double err0 = 0.0;
  double total = gk15(f, a, b, err0);
  double total_err = err0;
  pieces.push({a, b, total, err0});
  int n = 1;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (n >= opt.max_intervals)
      throw std::runtime_error("integrate: interval budget exhausted");
    const detail::QuadPiece worst = pieces.top();
    pieces.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) continue;  // cannot split further
    double e1 = 0.0, e2 = 0.0;
    const double v1 = gk15(f, worst.a, mid, e1);
    const double v2 = gk15(f, mid, worst.b, e2);
    total += v1 + v2 - worst.value;
    total_err += e1 + e2 - worst.err;
    pieces.push({worst.a, mid, v1, e1});
    pieces.push({mid, worst.b, v2, e2});
    ++n;
  }
  return total;
}

// Integrate with interior break points (integrand kinks, support edges).
template <class F>
double integrate_knots(const F& f, std::span<const double> knots,
                       QuadOptions opt = {}) {
  double sum = 0.0;
  QuadOptions piece_opt = opt;
  piece_opt.rel_tol = opt.rel_tol * 0.5;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    sum += integrate(f, knots[i], knots[i + 1], piece_opt);
  return sum;
}

}  // namespace sobmor
