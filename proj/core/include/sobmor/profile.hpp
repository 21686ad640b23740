#pragma once

#include <string>

#include "sobmor/error.hpp"

namespace sobmor {

enum class ProfileKind { Trapezoid, SmoothMollified };

const char* profile_kind_name(ProfileKind k);
ProfileKind profile_kind_from_name(const std::string& name);  // TypeMismatch

// 1-D cutoff: value 1 on [-1,1], 0 outside (-2,2), even, range [0,1].
//
// Trapezoid: linear ramps, |eta'| = 1 a.e. on the transitions; every moment
// has a closed form. SmoothMollified: a shrunken trapezoid convolved with the
// standard bump mollifier, C^inf with |eta'| <= deriv_bound() (necessarily
// > 1 for a unit-width transition).
class Profile1D {
 public:
  explicit Profile1D(ProfileKind kind = ProfileKind::Trapezoid);

  ProfileKind kind() const { return kind_; }

  double operator()(double t) const;
  double deriv(double t) const;
  double deriv_bound() const { return slope_; }

  // I_eta(r) = integral of eta^r over R (r > 0).
  double moment(double r) const;
  // integral of |eta'|^p over R (p >= 1).
  double prime_moment(double p) const;
  // integral of eta^r over [t1, t2] (clamped to the support).
  double partial_moment(double r, double t1, double t2) const;

 private:
  double mollified_value(double t) const;
  double mollified_deriv(double t) const;
  double base_value(double t) const;
  double base_deriv(double t) const;

  ProfileKind kind_;
  double eps_ = 0.125;  // mollifier halfwidth
  double slope_ = 1.0;  // sup |eta'|
};

// Radial factor phi(x) = phi0(|x|) on R^m with m = d-1: phi0 is the profile
// section on s >= 0 (1 for s <= 1, 0 for s >= 2).
class RadialProfile {
 public:
  RadialProfile(ProfileKind kind, int ambient_dim);

  int ambient_dim() const { return m_; }
  const Profile1D& section() const { return section_; }

  double radial(double s) const { return section_(s); }
  double radial_deriv(double s) const { return section_.deriv(s); }

  // Surface measure of the unit sphere in R^m (2 for m = 1).
  double sphere_measure() const;

  // J_phi(r) = integral of phi^r over R^m.
  double moment(double r) const;
  // integral of phi^r over the centered ball of radius R.
  double ball_moment(double r, double R) const;

 private:
  Profile1D section_;
  int m_;
};

}  // namespace sobmor
