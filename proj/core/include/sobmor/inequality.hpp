#pragma once

#include "sobmor/maximal.hpp"
#include "sobmor/params.hpp"

namespace sobmor {

// Empirical Poincare constant: max over sampled windows of
//   (window mean of |u - window mean of u|) / (rho * window mean of |grad u|),
// with rho the window half-width in length units. Windows whose gradient
// mean is below 1e-14 are skipped; an empty sample yields 0.
double poincare_ratio(const GridField& u, const WindowLattice& lattice,
                      int center_stride);

struct Lemma1Report {
  double lhs = 0.0;        // integral of |u|^{p(q/d+1)}
  double rhs_grad = 0.0;   // integral of |grad u|^p
  double rhs_morrey = 0.0; // (sup of rho^{d/q} * window avg of |u|)^{qp/d}
  double ratio = 0.0;      // lhs / (rhs_grad * rhs_morrey)
};

Lemma1Report verify_lemma1(const GridField& u, const ParamSet& ps,
                           const WindowLattice& lattice);

struct FsRatios {
  double f_over_sharp = 0.0;  // ||f||_s / ||M# f||_s
  double sharp_over_f = 0.0;  // ||M# f||_s / ||f||_s
  double f_over_hl = 0.0;     // ||f||_s / ||M f||_s  (<= 1 always)
  double hl_over_f = 0.0;     // ||M f||_s / ||f||_s
};

FsRatios verify_fs_equivalence(const GridField& f, double s,
                               const WindowLattice& lattice);

// ||u||_{p*} / ||grad u||_p, the empirical Sobolev constant.
double verify_sobolev(const GridField& u, const ParamSet& ps);

struct HolderReport {
  double theta_interp = 0.0;
  double lhs = 0.0;    // integral of |u|^r
  double bound = 0.0;  // interpolation product
  double slack = 0.0;  // bound - lhs, >= 0 up to rounding
};

// Interpolation bound between the r_low and p* integrals; exact on sums.
HolderReport verify_holder_chain(const GridField& u, const ParamSet& ps,
                                 double r);

}  // namespace sobmor
