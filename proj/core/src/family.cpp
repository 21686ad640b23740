#include "sobmor/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sobmor/quadrature.hpp"

namespace sobmor {

CexFamily::CexFamily(ParamSet ps, ProfileKind kind)
    : ps_(std::move(ps)), eta_(kind), phi_(kind, ps_.d - 1) {
  if (ps_.mode != ParamMode::Counterexample)
    throw Error(ErrorCode::ThetaDegenerate,
                "family requires a counterexample-mode parameter set");
  k0_ = OffsetSchedule(ps_.theta, OffsetSchedule::min_k0(ps_.theta) + 1).k0();
  kp_ = compute_grad_kernel();
}

SigmaTrain CexFamily::train(int n) const {
  return SigmaTrain(OffsetSchedule(ps_.theta, n), eta_);
}

double CexFamily::eval(int n, double t, double x_radius) const {
  if (n < k0_)
    throw Error(ErrorCode::NTooSmall,
                "n = " + std::to_string(n) + " < k0 = " + std::to_string(k0_));
  const double lambda = std::exp2(-ps_.alpha * n);
  const double cn = std::exp2(-ps_.alpha * ps_.d * n / ps_.q);
  return cn / s_ * train(n)(lambda * t) * phi_.radial(lambda * x_radius);
}

double CexFamily::eta_moment(double r) const {
  std::lock_guard<std::mutex> lock(memo_->mx);
  auto it = memo_->eta.find(r);
  if (it == memo_->eta.end())
    it = memo_->eta.emplace(r, eta_.moment(r)).first;
  return it->second;
}

double CexFamily::phi_moment(double r) const {
  std::lock_guard<std::mutex> lock(memo_->mx);
  auto it = memo_->phi.find(r);
  if (it == memo_->phi.end())
    it = memo_->phi.emplace(r, phi_.moment(r)).first;
  return it->second;
}

// K(p) = one-bump mass of |grad u|^p in profile coordinates:
// int over t in [-2,2], radial s in [0,2] of
//   (eta'(t)^2 phi0(s)^2 + eta(t)^2 phi0'(s)^2)^{p/2} * omega s^{m-1}.
double CexFamily::compute_grad_kernel() const {
  const double p = ps_.p;
  const int m = ps_.d - 1;
  const double omega = phi_.sphere_measure();
  const double knots_t[] = {-2.0, -1.0, 1.0, 2.0};
  const double knots_s[] = {0.0, 1.0, 2.0};
  const auto inner = [&](double t) {
    const double et = eta_(t), dt = eta_.deriv(t);
    return integrate_knots(
        [&](double s) {
          const double ph = phi_.radial(s), dph = phi_.radial_deriv(s);
          const double g2 = dt * dt * ph * ph + et * et * dph * dph;
          if (g2 <= 0.0) return 0.0;
          const double w = m == 1 ? 1.0 : std::pow(s, double(m - 1));
          return std::pow(g2, 0.5 * p) * w;
        },
        knots_s, {.rel_tol = 1e-11, .abs_tol = 1e-15});
  };
  return omega * integrate_knots(inner, knots_t,
                                 {.rel_tol = 1e-9, .abs_tol = 1e-13});
}

double CexFamily::log2_lr_norm(int n, double r) const {
  if (n < k0_)
    throw Error(ErrorCode::NTooSmall,
                "n = " + std::to_string(n) + " < k0 = " + std::to_string(k0_));
  if (!(r > 0.0))
    throw Error(ErrorCode::NonPositiveR, "lr_norm requires r > 0");
  const OffsetSchedule sched(ps_.theta, n);
  const double count = sched.total_count_d();
  const double a = ps_.alpha, d = ps_.d, q = ps_.q;
  return r * (-std::log2(s_) - a * d * n / q) + d * a * n +
         std::log2(2.0 * count * eta_moment(r) * phi_moment(r));
}

double CexFamily::lr_norm(int n, double r) const {
  return std::exp2(log2_lr_norm(n, r));
}

double CexFamily::log2_grad_lp_norm(int n) const {
  if (n < k0_)
    throw Error(ErrorCode::NTooSmall,
                "n = " + std::to_string(n) + " < k0 = " + std::to_string(k0_));
  const OffsetSchedule sched(ps_.theta, n);
  const double count = sched.total_count_d();
  const double a = ps_.alpha, d = ps_.d, q = ps_.q, p = ps_.p;
  return p * (-std::log2(s_) - a * d * n / q) + (d - p) * a * n +
         std::log2(2.0 * count * kp_);
}

double CexFamily::grad_lp_norm(int n) const {
  return std::exp2(log2_grad_lp_norm(n));
}

// sup over ball windows B_rho((t0, 0)) of rho^{-theta} int |u_n|^{q1}.
// The ball integral is bracketed by separable boxes: it is at most the
// circumscribed cylinder [t0 - rho, t0 + rho] x {|x| <= rho} and at least
// the inscribed cylinder with t-halfwidth rho/sqrt(d) and x-radius
// rho sqrt((d-1)/d). Off-axis centers never dominate: both separable
// factors are maximal for windows centered on the symmetry axis.
MorreyQuery CexFamily::morrey_sup(int n) const {
  if (n < k0_)
    throw Error(ErrorCode::NTooSmall,
                "n = " + std::to_string(n) + " < k0 = " + std::to_string(k0_));
  const double q1 = ps_.q1, theta = ps_.theta, d = ps_.d;
  const double a = ps_.alpha;
  const double lambda = std::exp2(-a * n);
  const double scale = std::exp2(a * n);  // bump length scale
  const SigmaTrain sig = train(n);
  const OffsetSchedule& sched = sig.schedule();

  // log2 of the n-dependent constant (c_n / s)^{q1}
  const double log2_c = q1 * (-std::log2(s_) - a * d * n / ps_.q);

  const auto window_log2 = [&](double t0, double t_half,
                               double x_rad) -> double {
    // t-factor: int sigma(lambda t)^{q1} over [t0 - t_half, t0 + t_half]
    const double tint =
        sig.window_integral(lambda * (t0 - t_half), lambda * (t0 + t_half),
                            q1) / lambda;
    if (tint <= 0.0) return -std::numeric_limits<double>::infinity();
    // x-factor: int phi(lambda x)^{q1} over the (d-1)-ball of radius x_rad
    const double xint =
        phi_.ball_moment(q1, lambda * x_rad) / std::pow(lambda, d - 1.0);
    return log2_c + std::log2(tint) + std::log2(xint);
  };

  std::vector<double> centers{0.0};
  for (int k = sched.k0(); k <= sched.n(); ++k) {
    const long long m = sched.block_count(k);
    for (long long j : {1ll, (m + 1) / 2, m})
      centers.push_back(scale * sched.offset(k, j));
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  const double rho_min = 0.5 * scale;
  const double rho_max = scale * std::exp2(n + 2);
  const double ratio = std::exp2(1.0 / 16.0);

  MorreyQuery best;
  double best_log2 = -std::numeric_limits<double>::infinity();
  for (double t0 : centers) {
    for (double rho = rho_min; rho <= rho_max; rho *= ratio) {
      const double v = -theta * std::log2(rho) + window_log2(t0, rho, rho);
      if (v > best_log2) {
        best_log2 = v;
        best.t0 = t0;
        best.rho = rho;
      }
    }
  }
  best.sup = std::exp2(best_log2);

  // bracket ratio at the argmax: circumscribed vs inscribed cylinder
  const double inner_t = best.rho / std::sqrt(d);
  const double inner_x = best.rho * std::sqrt((d - 1.0) / d);
  const double inner_log2 =
      -theta * std::log2(best.rho) + window_log2(best.t0, inner_t, inner_x);
  best.bracket_ratio = std::exp2(best_log2 - inner_log2);
  return best;
}

void CexFamily::normalize(int n_lo, int n_hi) {
  if (n_lo < k0_ || n_hi < n_lo)
    throw Error(ErrorCode::NTooSmall, "normalize window must start at k0");
  s_ = 1.0;
  double s = 1.0;
  for (int n = n_lo; n <= n_hi; ++n) {
    s = std::max(s, std::pow(grad_lp_norm(n), 1.0 / ps_.p));
    s = std::max(s, std::pow(morrey_sup(n).sup, 1.0 / ps_.q1));
  }
  // headroom so the bounds hold as literal <= 1 after rounding
  s_ = s * (1.0 + 1e-12);
}

ScalingFit CexFamily::scaling_fit(double r, int n_lo, int n_hi) const {
  if (n_hi - n_lo + 1 < 5)
    throw Error(ErrorCode::WindowTooShort,
                "scaling fit needs at least 5 points");
  const int cnt = n_hi - n_lo + 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> ys(static_cast<std::size_t>(cnt));
  for (int n = n_lo; n <= n_hi; ++n) {
    const double y = log2_lr_norm(n, r);
    ys[static_cast<std::size_t>(n - n_lo)] = y;
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += double(n) * y;
  }
  ScalingFit fit;
  fit.r = r;
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  const double denom = cnt * sxx - sx * sx;
  fit.slope = (cnt * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / cnt;
  for (int n = n_lo; n <= n_hi; ++n)
    fit.max_residual = std::max(
        fit.max_residual,
        std::abs(ys[static_cast<std::size_t>(n - n_lo)] -
                 (fit.intercept + fit.slope * n)));
  fit.predicted = scaling_exponent(ps_, r);
  fit.verdict = fit.slope > kSlopeTol ? Verdict::BlowUp : Verdict::Bounded;
  return fit;
}

std::vector<SharpnessRow> CexFamily::sharpness_report(
    std::span<const double> r_list, int n_lo, int n_hi) const {
  std::vector<SharpnessRow> rows;
  rows.reserve(r_list.size());
  for (double r : r_list) {
    const ScalingFit fit = scaling_fit(r, n_lo, n_hi);
    SharpnessRow row;
    row.r = r;
    row.slope = fit.slope;
    row.predicted = fit.predicted;
    row.verdict = fit.verdict;
    const Verdict expected =
        r >= ps_.r_low ? Verdict::Bounded : Verdict::BlowUp;
    row.agrees = row.verdict == expected;
    rows.push_back(row);
  }
  return rows;
}

NormReport CexFamily::norm_report(int n, std::span<const double> r_list) const {
  NormReport rep;
  rep.n = n;
  rep.grad_lp = grad_lp_norm(n);
  rep.morrey_argmax = morrey_sup(n);
  rep.morrey_sup = rep.morrey_argmax.sup;
  for (double r : r_list) rep.lr.emplace_back(r, lr_norm(n, r));
  return rep;
}

}  // namespace sobmor
