#include "sobmor/params.hpp"

#include <cmath>
#include <sstream>

namespace sobmor {

std::vector<ErrorCode> check_params(int d, double p, double q, double q1,
                                    ParamMode mode) {
  std::vector<ErrorCode> bad;
  const bool d_ok = d >= 2;
  if (!d_ok) bad.push_back(ErrorCode::DimensionTooSmall);

  const bool p_ok = std::isfinite(p) && p > 1.0 && (!d_ok || p < double(d));
  if (!p_ok) bad.push_back(ErrorCode::POutOfRange);

  bool q_ok = std::isfinite(q) && q > 1.0;
  if (q_ok && d_ok && p_ok) q_ok = q < p * d / (d - p);
  if (!q_ok) bad.push_back(ErrorCode::QOutOfRange);

  if (!(std::isfinite(q1) && q1 >= 1.0 && q1 <= q)) {
    bad.push_back(ErrorCode::Q1OutOfRange);
  } else if (mode == ParamMode::Counterexample && q_ok) {
    if (q1 == q) {
      bad.push_back(ErrorCode::ThetaDegenerate);
    } else if (d_ok && d * (q - q1) / q > kThetaMax) {
      bad.push_back(ErrorCode::ThetaTooLarge);
    }
  }
  return bad;
}

ParamSet validate(int d, double p, double q, double q1, ParamMode mode) {
  const std::vector<ErrorCode> bad = check_params(d, p, q, q1, mode);
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "invalid parameters (d=" << d << ", p=" << p << ", q=" << q
        << ", q1=" << q1 << ", mode=" << param_mode_name(mode) << "):";
    for (ErrorCode c : bad) msg << ' ' << error_code_name(c);
    throw ValidationError(bad, msg.str());
  }
  ParamSet ps;
  ps.d = d;
  ps.p = p;
  ps.q = q;
  ps.q1 = q1;
  ps.mode = mode;
  ps.theta = d * (q - q1) / q;
  ps.alpha = d * (q - q1) / (d * p - (d - p) * q);
  ps.sobolev_exp = p * d / (d - p);
  ps.r_low = p * (q / d + 1.0);
  return ps;
}

double scaling_exponent(const ParamSet& ps, double r) {
  if (!(r > 0.0))
    throw Error(ErrorCode::NonPositiveR, "scaling_exponent requires r > 0");
  const double d = ps.d;
  const double coeff =
      d * d * (ps.q - ps.q1) / (ps.q * (d * ps.p - (d - ps.p) * ps.q));
  return coeff * (ps.p * (1.0 + ps.q / d) - r);
}

RInterval admissible_range(const ParamSet& ps) {
  return {ps.r_low, ps.sobolev_exp};
}

std::optional<RInterval> extended_range(const ParamSet& ps) {
  if (ps.q1 != ps.q) return std::nullopt;
  return RInterval{ps.q, ps.r_low};
}

Rational theta_exact(int d, const Rational& q, const Rational& q1) {
  return Rational(d) * (q - q1) / q;
}

Rational alpha_exact(int d, const Rational& p, const Rational& q,
                     const Rational& q1) {
  return Rational(d) * (q - q1) / (Rational(d) * p - (Rational(d) - p) * q);
}

Rational sobolev_exp_exact(int d, const Rational& p) {
  return p * Rational(d) / (Rational(d) - p);
}

Rational r_low_exact(int d, const Rational& p, const Rational& q) {
  return p * (q / Rational(d) + 1);
}

Rational scaling_exponent_exact(int d, const Rational& p, const Rational& q,
                                const Rational& q1, const Rational& r) {
  const Rational coeff = Rational(d) * Rational(d) * (q - q1) /
                         (q * (Rational(d) * p - (Rational(d) - p) * q));
  return coeff * (r_low_exact(d, p, q) - r);
}

}  // namespace sobmor
