#include "sobmor/schedule.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sobmor/interval.hpp"
#include "sobmor/params.hpp"

namespace sobmor {

int OffsetSchedule::min_k0(double theta) {
  const double a = std::ceil(1.0 + 2.0 / theta);          // m_k >= 1
  const double b = std::ceil(1.0 + 2.0 / (1.0 - theta));  // g_k >= 4
  return static_cast<int>(std::max(a, b));
}

OffsetSchedule::OffsetSchedule(double theta, int n,
                               std::optional<int> k0_override)
    : theta_(theta), n_(n) {
  if (!(theta > 0.0) || !(theta <= kThetaMax))
    throw Error(ErrorCode::ThetaOutOfRange,
                "theta must lie in (0, " + std::to_string(kThetaMax) +
                    "], got " + std::to_string(theta));
  k0_ = min_k0(theta);
  // min_k0 is derived in real arithmetic; absorb any one-off rounding of
  // theta*(k-1) by advancing until both block invariants actually hold.
  const auto block_ok = [theta](int k) {
    const bool count_ok = std::floor(std::exp2(theta * (k - 1))) - 3.0 >= 1.0;
    const Bracket g = bexp2(
        bmul(bsub(1.0, theta), Bracket::point(double(k - 1))));
    return count_ok && g.lo >= 4.0;
  };
  while (!block_ok(k0_)) ++k0_;
  if (k0_override) {
    if (*k0_override < k0_)
      throw Error(ErrorCode::K0TooSmall,
                  "k0 override " + std::to_string(*k0_override) +
                      " below minimum " + std::to_string(k0_));
    k0_ = *k0_override;
  }
  if (n < k0_)
    throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(n) +
                                          " < first block k0 = " +
                                          std::to_string(k0_));
}

void OffsetSchedule::require_block(int k) const {
  if (k < k0_ || k > n_)
    throw Error(ErrorCode::NTooSmall,
                "block index " + std::to_string(k) + " outside [" +
                    std::to_string(k0_) + ", " + std::to_string(n_) + "]");
}

double OffsetSchedule::block_gap(int k) const {
  require_block(k);
  return std::exp2((1.0 - theta_) * (k - 1));
}

long long OffsetSchedule::block_count(int k) const {
  require_block(k);
  const double v = std::exp2(theta_ * (k - 1));
  if (v - 3.0 > 9.0e18)
    throw Error(ErrorCode::TooManyBumps,
                "block count exceeds 64-bit range at k = " + std::to_string(k));
  return static_cast<long long>(std::floor(v)) - 3;
}

double OffsetSchedule::block_start(int k) const {
  require_block(k);
  return std::exp2(k - 1) + 1.0;
}

double OffsetSchedule::offset(int k, long long j) const {
  return block_start(k) + static_cast<double>(j) * block_gap(k);
}

long long OffsetSchedule::total_count() const {
  long long total = 0;
  for (int k = k0_; k <= n_; ++k) {
    const long long m = block_count(k);
    if (total > std::numeric_limits<long long>::max() - m)
      throw Error(ErrorCode::TooManyBumps, "bump count overflows 64 bits");
    total += m;
  }
  return total;
}

double OffsetSchedule::total_count_d() const {
  double total = 0.0;
  for (int k = k0_; k <= n_; ++k)
    total += std::floor(std::exp2(theta_ * (k - 1))) - 3.0;
  return total;
}

bool OffsetSchedule::gap_certified(int k) const {
  const Bracket e = bmul(bsub(1.0, theta_), Bracket::point(double(k - 1)));
  return bexp2(e).lo >= 4.0;
}

bool OffsetSchedule::containment_certified(int k) const {
  const long long m = block_count(k);
  if (m < 1) return false;
  const Bracket g =
      bexp2(bmul(bsub(1.0, theta_), Bracket::point(double(k - 1))));
  const Bracket start = badd(Bracket::point(std::exp2(k - 1)),
                             Bracket::point(1.0));
  const Bracket first = badd(start, g);
  const Bracket last = badd(start, bmul(double(m), g));
  const double lo_bound = std::exp2(k - 1) + 2.0;  // exact for k <= 52
  const double hi_bound = std::exp2(k) - 2.0;
  // outward rounding of the bounds themselves
  const double lo = k <= 52 ? lo_bound : step_up(lo_bound);
  const double hi = k <= 52 ? hi_bound : step_down(hi_bound);
  return first.lo > lo && last.hi < hi;
}

}  // namespace sobmor
