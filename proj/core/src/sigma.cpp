#include "sobmor/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sobmor/quadrature.hpp"

namespace sobmor {

SigmaTrain::SigmaTrain(OffsetSchedule schedule, Profile1D profile)
    : schedule_(std::move(schedule)), profile_(std::move(profile)) {}

// chi_n at u > 0: identify the block from the binary exponent of u, then the
// at most one bump whose support can contain u by index arithmetic.
double SigmaTrain::chi_eval(double u, bool derivative) const {
  if (!(u > 0.0)) return 0.0;
  const int k0 = schedule_.k0(), n = schedule_.n();
  if (u < std::exp2(k0 - 1) || u >= std::exp2(n)) return 0.0;
  const int kc = std::ilogb(u) + 1;
  double acc = 0.0;
  for (int k = std::max(k0, kc - 1); k <= std::min(n, kc + 1); ++k) {
    const double g = schedule_.block_gap(k);
    const long long m = schedule_.block_count(k);
    const long long jc = std::llround((u - schedule_.block_start(k)) / g);
    for (long long j = std::max(1ll, jc - 1);
         j <= std::min(m, jc + 1); ++j) {
      const double local = u - schedule_.offset(k, j);
      if (local > -2.0 && local < 2.0)
        acc += derivative ? profile_.deriv(local) : profile_(local);
    }
  }
  return acc;
}

double SigmaTrain::operator()(double t) const {
  // chi_n vanishes on t <= 0, so sigma_n(t) = chi_n(|t|)
  return chi_eval(std::abs(t), false);
}

double SigmaTrain::prime(double t) const {
  const double d = chi_eval(std::abs(t), true);
  return t < 0.0 ? -d : d;
}

double SigmaTrain::lr_norm_closed(double r) const {
  return 2.0 * schedule_.total_count_d() * profile_.moment(r);
}

double SigmaTrain::lr_norm_quadrature(double r, double tol) const {
  const long long total = schedule_.total_count();
  if (total > 1000000)
    throw Error(ErrorCode::TooManyBumps,
                "quadrature path limited to 10^6 bumps, schedule has " +
                    std::to_string(total));
  double sum = 0.0;
  for (int k = schedule_.k0(); k <= schedule_.n(); ++k) {
    const long long m = schedule_.block_count(k);
    for (long long j = 1; j <= m; ++j) {
      const double a = schedule_.offset(k, j);
      sum += integrate([&](double t) { return std::pow((*this)(t), r); },
                       a - 2.0, a + 2.0, {.rel_tol = tol, .abs_tol = 1e-14});
    }
  }
  return 2.0 * sum;  // symmetrization
}

double SigmaTrain::chi_window_integral(double lo, double hi, double r) const {
  if (hi <= lo) return 0.0;
  const double moment = profile_.moment(r);
  double sum = 0.0;
  for (int k = schedule_.k0(); k <= schedule_.n(); ++k) {
    const double g = schedule_.block_gap(k);
    const double s = schedule_.block_start(k);
    const long long m = schedule_.block_count(k);
    const double first = s + g, last = s + double(m) * g;
    if (last + 2.0 <= lo || first - 2.0 >= hi) continue;

    // bumps with support fully inside [lo, hi]
    long long jlo = static_cast<long long>(std::ceil((lo + 2.0 - s) / g));
    long long jhi = static_cast<long long>(std::floor((hi - 2.0 - s) / g));
    jlo = std::max(jlo, 1ll);
    jhi = std::min(jhi, m);
    // guard the float index arithmetic
    while (jlo <= m && s + double(jlo) * g < lo + 2.0) ++jlo;
    while (jlo > 1 && s + double(jlo - 1) * g >= lo + 2.0) --jlo;
    while (jhi >= 1 && s + double(jhi) * g > hi - 2.0) --jhi;
    while (jhi < m && s + double(jhi + 1) * g <= hi - 2.0) ++jhi;
    if (jhi >= jlo) sum += double(jhi - jlo + 1) * moment;

    // boundary bumps clipped by a window end
    long long cand[8];
    int nc = 0;
    for (double e : {lo, hi}) {
      const long long jc = std::llround((e - s) / g);
      for (long long j = jc - 1; j <= jc + 1; ++j)
        if (j >= 1 && j <= m && !(j >= jlo && j <= jhi)) cand[nc++] = j;
    }
    std::sort(cand, cand + nc);
    nc = static_cast<int>(std::unique(cand, cand + nc) - cand);
    for (int i = 0; i < nc; ++i) {
      const double a = s + double(cand[i]) * g;
      const double x1 = std::max(lo, a - 2.0) - a;
      const double x2 = std::min(hi, a + 2.0) - a;
      if (x2 > x1) sum += profile_.partial_moment(r, x1, x2);
    }
  }
  return sum;
}

double SigmaTrain::window_integral(double lo, double hi, double r) const {
  return chi_window_integral(lo, hi, r) + chi_window_integral(-hi, -lo, r);
}

SigmaTrain::MorreySup SigmaTrain::morrey_sup(double r, double theta,
                                             long long max_centers) const {
  std::vector<double> centers{0.0};
  const long long total = schedule_.total_count();
  const long long stride = std::max(1ll, total / std::max(1ll, max_centers));
  for (int k = schedule_.k0(); k <= schedule_.n(); ++k) {
    const long long m = schedule_.block_count(k);
    for (long long j = 1; j <= m; j += stride)
      centers.push_back(schedule_.offset(k, j));
    centers.push_back(0.5 * (schedule_.offset(k, 1) + schedule_.offset(k, m)));
  }

  MorreySup best;
  const double rho_max = std::exp2(schedule_.n() + 1);
  const double ratio = std::exp2(1.0 / 32.0);
  for (double t0 : centers) {
    for (double rho = 0.5; rho <= rho_max; rho *= ratio) {
      const double w = window_integral(t0 - rho, t0 + rho, r);
      if (w <= 0.0) continue;
      const double v = std::pow(rho, -theta) * w;
      if (v > best.sup) best = {v, t0, rho};
    }
  }
  return best;
}

}  // namespace sobmor
