#pragma once

#include <vector>

#include "sobmor/grid.hpp"

namespace sobmor {

// Dyadic window half-widths in cells: 1, 2, 4, ... up to the field padding.
struct WindowLattice {
  std::vector<int> radii;

  static WindowLattice up_to(int padding) {
    WindowLattice w;
    for (int r = 1; r <= padding; r *= 2) w.radii.push_back(r);
    return w;
  }

  int max_radius() const { return radii.empty() ? 0 : radii.back(); }
};

// Inclusive d-dimensional prefix sums; cube-window sums in O(2^d) lookups.
// Windows are clipped to the box; the zero extension contributes nothing to
// sums and is accounted for explicitly where means matter.
class PrefixSum {
 public:
  explicit PrefixSum(const GridField& f, bool absolute);

  // sum over cells with index in [lo[a], hi[a]] per axis, clipped
  double window_sum(const int lo[3], const int hi[3]) const;

 private:
  std::array<int, 3> ext_;
  int dim_;
  std::vector<double> s_;
};

// Hardy-Littlewood maximal function on cube windows. The degenerate one-cell
// window is always included, so M f >= |f| pointwise.
GridField hl_maximal(const GridField& f, const WindowLattice& lattice);

// Sharp maximal function: max over radii of the window mean of
// |f - window mean|. Means come from prefix sums; the deviation pass is a
// direct window scan (no exact prefix trick exists for it).
GridField sharp_maximal(const GridField& f, const WindowLattice& lattice);

// O(cells * window) reference scans for oracle comparisons.
GridField hl_maximal_direct(const GridField& f, const WindowLattice& lattice);
GridField sharp_maximal_direct(const GridField& f,
                               const WindowLattice& lattice);

}  // namespace sobmor
