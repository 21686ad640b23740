#pragma once

#include <optional>

#include "sobmor/error.hpp"

namespace sobmor {

// Bump-center schedule: block k in [k0, n] places m_k centers
//   a_{k,j} = 2^{k-1} + 1 + j * g_k,   1 <= j <= m_k,
// with gap g_k = 2^{(1-theta)(k-1)} and count m_k = floor(2^{theta(k-1)}) - 3.
// Every center lies in (2^{k-1}+2, 2^k-2) and consecutive centers are at
// least 4 apart, so the width-4 bump supports are pairwise disjoint.
//
// Blocks are lazily indexed; nothing is materialized.
class OffsetSchedule {
 public:
  OffsetSchedule(double theta, int n, std::optional<int> k0_override = {});

  double theta() const { return theta_; }
  int n() const { return n_; }
  int k0() const { return k0_; }

  // Smallest block index with m_k >= 1 and g_k >= 4:
  // max(ceil(1 + 2/theta), ceil(1 + 2/(1-theta))).
  static int min_k0(double theta);

  double block_gap(int k) const;        // g_k
  long long block_count(int k) const;   // m_k
  double block_start(int k) const;      // 2^{k-1} + 1
  double offset(int k, long long j) const;

  long long total_count() const;        // N(n, theta); throws TooManyBumps on
                                        // int64 overflow
  double total_count_d() const;         // same sum in double (large n)

  // Outward-rounded interval certificates for the as-built floating-point
  // offsets: strict containment in (2^{k-1}+2, 2^k-2), and g_k >= 4.
  bool containment_certified(int k) const;
  bool gap_certified(int k) const;

 private:
  void require_block(int k) const;

  double theta_ = 0.5;
  int n_ = 0;
  int k0_ = 0;
};

inline OffsetSchedule make_schedule(double theta, int n,
                                    std::optional<int> k0_override = {}) {
  return OffsetSchedule(theta, n, k0_override);
}

}  // namespace sobmor
