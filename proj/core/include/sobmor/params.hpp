#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sobmor/error.hpp"
#include "sobmor/rational.hpp"

namespace sobmor {

enum class ParamMode { Verification, Counterexample };

inline const char* param_mode_name(ParamMode m) {
  return m == ParamMode::Verification ? "verification" : "counterexample";
}

// Largest theta = d(q - q1)/q accepted in Counterexample mode. Bump support
// gaps grow like 2^{(1-theta)(k-1)}, so any theta < 1 works; 0.75 keeps the
// first usable block index small and the disjointness margins wide.
inline constexpr double kThetaMax = 0.75;

// Validated parameter tuple with every derived exponent the toolkit uses.
struct ParamSet {
  int d = 2;
  double p = 1.5;
  double q = 2.0;
  double q1 = 1.5;
  ParamMode mode = ParamMode::Counterexample;

  double theta = 0.0;        // d (q - q1) / q
  double alpha = 0.0;        // d (q - q1) / (d p - (d - p) q)
  double sobolev_exp = 0.0;  // p* = p d / (d - p)
  double r_low = 0.0;        // p (q/d + 1)
};

// All violated constraints for the raw tuple; empty means valid.
std::vector<ErrorCode> check_params(int d, double p, double q, double q1,
                                    ParamMode mode);

// Builds a ParamSet or throws ValidationError listing every violation.
ParamSet validate(int d, double p, double q, double q1, ParamMode mode);

// e(r) = d^2 (q - q1) / (q (d p - (d - p) q)) * (p (1 + q/d) - r).
// Positive e(r) means the L^r mass of the family blows up in n.
double scaling_exponent(const ParamSet& ps, double r);

struct RInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// [p (q/d + 1), p d/(d - p)]: the r-range with guaranteed boundedness.
RInterval admissible_range(const ParamSet& ps);

// [q, p (q/d + 1)] when q1 == q; nothing otherwise (the counterexample
// family rules the extension out for q1 < q).
std::optional<RInterval> extended_range(const ParamSet& ps);

// Exact-arithmetic mirrors of the exponent algebra. Used where a crisp zero
// matters (e(r_low) = 0) and as the oracle for the floating-point path.
Rational theta_exact(int d, const Rational& q, const Rational& q1);
Rational alpha_exact(int d, const Rational& p, const Rational& q,
                     const Rational& q1);
Rational sobolev_exp_exact(int d, const Rational& p);
Rational r_low_exact(int d, const Rational& p, const Rational& q);
Rational scaling_exponent_exact(int d, const Rational& p, const Rational& q,
                                const Rational& q1, const Rational& r);

}  // namespace sobmor
