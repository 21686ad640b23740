#pragma once

#include <utility>

#include "sobmor/profile.hpp"
#include "sobmor/schedule.hpp"

namespace sobmor {

// Symmetrized bump train sigma_n(t) = chi_n(t) + chi_n(-t), where chi_n is
// the sum of profile translates at the schedule offsets. Supports are
// pairwise disjoint, so 0 <= sigma_n <= 1 and every L^r mass is a bump count
// times a single-profile moment.
class SigmaTrain {
 public:
  SigmaTrain(OffsetSchedule schedule, Profile1D profile);

  const OffsetSchedule& schedule() const { return schedule_; }
  const Profile1D& profile() const { return profile_; }

  double operator()(double t) const;
  double prime(double t) const;

  // integral of sigma_n^r over R: exactly 2 N(n) I_eta(r).
  double lr_norm_closed(double r) const;

  // Independent check: composite quadrature over the union of bump supports,
  // enumerated lazily. Throws TooManyBumps when N(n) > 10^6.
  double lr_norm_quadrature(double r, double tol) const;

  // integral of sigma_n^r over [lo, hi]: full bumps counted exactly,
  // boundary bumps integrated via partial moments.
  double window_integral(double lo, double hi, double r) const;

  struct MorreySup {
    double sup = 0.0;
    double t0 = 0.0;
    double rho = 0.0;
  };

  // sup over centered windows of rho^{-theta} * integral of sigma^r.
  // Candidates: t0 in {0} U {bump centers} U {block midpoints}, rho on a
  // geometric grid [1/2, 2^{n+1}] with ratio 2^{1/32} (fine enough that the
  // radius rounding loss 2^{theta/64} stays under the oracle tolerances).
  // Window integrals are exact up to the boundary-bump partial moments.
  MorreySup morrey_sup(double r, double theta,
                       long long max_centers = 200000) const;

 private:
  double chi_eval(double u, bool derivative) const;
  double chi_window_integral(double lo, double hi, double r) const;

  OffsetSchedule schedule_;
  Profile1D profile_;
};

}  // namespace sobmor
