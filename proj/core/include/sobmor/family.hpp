#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "sobmor/params.hpp"
#include "sobmor/profile.hpp"
#include "sobmor/sigma.hpp"

namespace sobmor {

enum class Verdict { BlowUp, Bounded };

inline const char* verdict_name(Verdict v) {
  return v == Verdict::BlowUp ? "blowup" : "bounded";
}

// Fitted slopes within this tolerance of zero count as bounded.
inline constexpr double kSlopeTol = 0.02;

struct ScalingFit {
  double r = 0.0;
  int n_lo = 0, n_hi = 0;
  double slope = 0.0;      // base-2 growth rate per n
  double intercept = 0.0;
  double max_residual = 0.0;
  double predicted = 0.0;  // e(r) from the exponent algebra
  Verdict verdict = Verdict::Bounded;
};

struct MorreyQuery {
  double sup = 0.0;
  double t0 = 0.0;            // maximizing window center (on the t-axis)
  double rho = 0.0;           // maximizing radius
  double bracket_ratio = 1.0; // circumscribed / inscribed value at the argmax
};

struct NormReport {
  int n = 0;
  double grad_lp = 0.0;     // integral of |grad u_n|^p
  double morrey_sup = 0.0;
  MorreyQuery morrey_argmax;
  std::vector<std::pair<double, double>> lr;  // (r, integral of |u_n|^r)
};

struct SharpnessRow {
  double r = 0.0;
  double slope = 0.0;
  double predicted = 0.0;
  Verdict verdict = Verdict::Bounded;
  bool agrees = false;
};

// The scaled family u_n(t, x) = (1/s) 2^{-alpha d n / q}
// sigma_n(2^{-alpha n} t) phi(2^{-alpha n} x) on R x R^{d-1}, kept in
// separable form: no d-dimensional grid is ever materialized. The divisor s
// is 1 until normalize() fixes it so both gradient and Morrey bounds hold as
// literal inequalities over a window of n.
class CexFamily {
 public:
  explicit CexFamily(ParamSet ps, ProfileKind kind = ProfileKind::Trapezoid);

  const ParamSet& params() const { return ps_; }
  ProfileKind profile_kind() const { return eta_.kind(); }
  int k0() const { return k0_; }
  double normalization() const { return s_; }

  double eval(int n, double t, double x_radius) const;

  double lr_norm(int n, double r) const;        // integral of |u_n|^r
  double log2_lr_norm(int n, double r) const;   // same, in log2 (no underflow)
  double grad_lp_norm(int n) const;             // integral of |grad u_n|^p
  double log2_grad_lp_norm(int n) const;

  MorreyQuery morrey_sup(int n) const;

  // Sets s so grad_lp_norm(n) <= 1 and morrey_sup(n) <= 1 for all n in
  // [n_lo, n_hi]. Slopes are unchanged: s only shifts log2 norms.
  void normalize(int n_lo, int n_hi);

  ScalingFit scaling_fit(double r, int n_lo, int n_hi) const;

  std::vector<SharpnessRow> sharpness_report(std::span<const double> r_list,
                                             int n_lo, int n_hi) const;

  NormReport norm_report(int n, std::span<const double> r_list) const;

  // one-bump gradient integrand mass K(p); exposed for cross-checks
  double grad_kernel() const { return kp_; }

  SigmaTrain train(int n) const;

 private:
  double eta_moment(double r) const;
  double phi_moment(double r) const;
  double compute_grad_kernel() const;

  // profile moments per r, shared across threads behind one lock
  struct Memo {
    std::mutex mx;
    std::map<double, double> eta;
    std::map<double, double> phi;
  };

  ParamSet ps_;
  Profile1D eta_;
  RadialProfile phi_;
  int k0_ = 0;
  double s_ = 1.0;
  double kp_ = 0.0;
  std::unique_ptr<Memo> memo_ = std::make_unique<Memo>();
};

}  // namespace sobmor
