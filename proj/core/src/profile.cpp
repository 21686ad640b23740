#include "sobmor/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sobmor/quadrature.hpp"

namespace sobmor {

namespace {

double mollifier(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double mollifier_norm() {
  static const double z =
      integrate([](double u) { return mollifier(u); }, -1.0, 1.0,
                {.rel_tol = 1e-13});
  return z;
}

}  // namespace

const char* profile_kind_name(ProfileKind k) {
  return k == ProfileKind::Trapezoid ? "trapezoid" : "smooth";
}

ProfileKind profile_kind_from_name(const std::string& name) {
  if (name == "trapezoid") return ProfileKind::Trapezoid;
  if (name == "smooth") return ProfileKind::SmoothMollified;
  throw Error(ErrorCode::TypeMismatch,
              "profile must be 'trapezoid' or 'smooth', got '" + name + "'");
}

Profile1D::Profile1D(ProfileKind kind) : kind_(kind) {
  if (kind_ == ProfileKind::SmoothMollified) slope_ = 1.0 / (1.0 - 2.0 * eps_);
}

// Pre-mollification trapezoid: plateau [-(1+eps), 1+eps], support
// [-(2-eps), 2-eps]; convolving with the width-eps mollifier restores the
// plateau [-1,1] and support [-2,2] of the target cutoff.
double Profile1D::base_value(double t) const {
  const double a = std::abs(t);
  const double p1 = 1.0 + eps_, p2 = 2.0 - eps_;
  if (a <= p1) return 1.0;
  if (a >= p2) return 0.0;
  return (p2 - a) * slope_;
}

double Profile1D::base_deriv(double t) const {
  const double a = std::abs(t);
  const double p1 = 1.0 + eps_, p2 = 2.0 - eps_;
  if (a <= p1 || a >= p2) return 0.0;
  return t > 0 ? -slope_ : slope_;
}

double Profile1D::mollified_value(double t) const {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double z = mollifier_norm();
  // break the mollifier window where base(t - eps u) has kinks
  std::vector<double> knots{-1.0, 1.0};
  for (double c : {1.0 + eps_, 2.0 - eps_, -1.0 - eps_, -2.0 + eps_}) {
    const double u = (t - c) / eps_;
    if (u > -1.0 && u < 1.0) knots.push_back(u);
  }
  std::sort(knots.begin(), knots.end());
  return integrate_knots(
             [&](double u) { return base_value(t - eps_ * u) * mollifier(u); },
             knots, {.rel_tol = 1e-12, .abs_tol = 1e-15}) /
         z;
}

double Profile1D::mollified_deriv(double t) const {
  const double a = std::abs(t);
  if (a <= 1.0 || a >= 2.0) return 0.0;
  const double z = mollifier_norm();
  std::vector<double> knots{-1.0, 1.0};
  for (double c : {1.0 + eps_, 2.0 - eps_, -1.0 - eps_, -2.0 + eps_}) {
    const double u = (t - c) / eps_;
    if (u > -1.0 && u < 1.0) knots.push_back(u);
  }
  std::sort(knots.begin(), knots.end());
  return integrate_knots(
             [&](double u) { return base_deriv(t - eps_ * u) * mollifier(u); },
             knots, {.rel_tol = 1e-12, .abs_tol = 1e-15}) /
         z;
}

double Profile1D::operator()(double t) const {
  if (kind_ == ProfileKind::Trapezoid)
    return std::clamp(2.0 - std::abs(t), 0.0, 1.0);
  return mollified_value(t);
}

double Profile1D::deriv(double t) const {
  if (kind_ == ProfileKind::Trapezoid) {
    const double a = std::abs(t);
    if (a <= 1.0 || a >= 2.0) return 0.0;
    return t > 0 ? -1.0 : 1.0;
  }
  return mollified_deriv(t);
}

double Profile1D::moment(double r) const {
  if (!(r > 0.0))
    throw Error(ErrorCode::NonPositiveExponent, "moment requires r > 0");
  if (kind_ == ProfileKind::Trapezoid) return 2.0 + 2.0 / (r + 1.0);
  // plateau + two transition zones
  const double tail = integrate(
      [&](double t) { return std::pow(mollified_value(t), r); }, 1.0, 2.0,
      {.rel_tol = 1e-10});
  return 2.0 + 2.0 * tail;
}

double Profile1D::prime_moment(double p) const {
  if (!(p >= 1.0))
    throw Error(ErrorCode::NonPositiveExponent, "prime_moment requires p >= 1");
  if (kind_ == ProfileKind::Trapezoid) return 2.0;
  const double tail = integrate(
      [&](double t) { return std::pow(std::abs(mollified_deriv(t)), p); }, 1.0,
      2.0, {.rel_tol = 1e-10});
  return 2.0 * tail;
}

double Profile1D::partial_moment(double r, double t1, double t2) const {
  if (!(r > 0.0))
    throw Error(ErrorCode::NonPositiveExponent,
                "partial_moment requires r > 0");
  t1 = std::clamp(t1, -2.0, 2.0);
  t2 = std::clamp(t2, -2.0, 2.0);
  if (t2 <= t1) return 0.0;
  if (kind_ == ProfileKind::Trapezoid) {
    // antiderivative of eta^r from -2
    const auto F = [r](double x) {
      if (x <= -1.0) return std::pow(x + 2.0, r + 1.0) / (r + 1.0);
      if (x <= 1.0) return 1.0 / (r + 1.0) + (x + 1.0);
      return 2.0 / (r + 1.0) + 2.0 - std::pow(2.0 - x, r + 1.0) / (r + 1.0);
    };
    return F(t2) - F(t1);
  }
  std::vector<double> knots{t1, t2};
  for (double c : {-1.0, 1.0})
    if (c > t1 && c < t2) knots.push_back(c);
  std::sort(knots.begin(), knots.end());
  return integrate_knots(
      [&](double t) { return std::pow(mollified_value(t), r); }, knots,
      {.rel_tol = 1e-10, .abs_tol = 1e-14});
}

RadialProfile::RadialProfile(ProfileKind kind, int ambient_dim)
    : section_(kind), m_(ambient_dim) {
  if (ambient_dim < 1)
    throw Error(ErrorCode::UnsupportedDim,
                "radial profile needs ambient dimension >= 1");
}

double RadialProfile::sphere_measure() const {
  if (m_ == 1) return 2.0;  // S^0: two points
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m_) / std::tgamma(0.5 * m_);
}

double RadialProfile::moment(double r) const { return ball_moment(r, 2.0); }

double RadialProfile::ball_moment(double r, double R) const {
  if (!(r > 0.0))
    throw Error(ErrorCode::NonPositiveExponent, "ball_moment requires r > 0");
  if (R <= 0.0) return 0.0;
  R = std::min(R, 2.0);
  const double omega = sphere_measure();
  if (section_.kind() == ProfileKind::Trapezoid && m_ <= 2) {
    if (m_ == 1) {
      // int_0^R phi0^r ds
      if (R <= 1.0) return omega * R;
      const double ramp =
          (1.0 - std::pow(2.0 - R, r + 1.0)) / (r + 1.0);
      return omega * (1.0 + ramp);
    }
    // m = 2: int_0^R phi0^r s ds
    if (R <= 1.0) return omega * 0.5 * R * R;
    const double v = 2.0 - R;  // in [0,1]
    const auto G = [r](double x) {
      return 2.0 * std::pow(x, r + 1.0) / (r + 1.0) -
             std::pow(x, r + 2.0) / (r + 2.0);
    };
    return omega * (0.5 + G(1.0) - G(v));
  }
  std::vector<double> knots{0.0, std::min(1.0, R), R};
  return omega * integrate_knots(
                     [&](double s) {
                       const double w =
                           m_ == 1 ? 1.0 : std::pow(s, double(m_ - 1));
                       return std::pow(section_(s), r) * w;
                     },
                     knots, {.rel_tol = 1e-10, .abs_tol = 1e-14});
}

}  // namespace sobmor
