#include "sobmor/maximal.hpp"

#include <algorithm>
#include <cmath>

namespace sobmor {

namespace {

void require_radii(const GridField& f, const WindowLattice& lattice) {
  if (lattice.max_radius() > f.padding())
    throw Error(ErrorCode::RadiusExceedsPadding,
                "window radius " + std::to_string(lattice.max_radius()) +
                    " exceeds field padding " + std::to_string(f.padding()));
}

double window_cells(const GridField& f, int radius) {
  double c = 1.0;
  for (int a = 0; a < f.dim(); ++a) c *= double(2 * radius + 1);
  return c;
}

}  // namespace

PrefixSum::PrefixSum(const GridField& f, bool absolute)
    : ext_(f.extents()), dim_(f.dim()), s_(f.values().begin(),
                                           f.values().end()) {
  if (absolute)
    for (double& v : s_) v = std::abs(v);
  const int stride[3] = {1, ext_[0], ext_[0] * ext_[1]};
  for (int a = 0; a < dim_; ++a) {
    for (int k = 0; k < ext_[2]; ++k)
      for (int j = 0; j < ext_[1]; ++j)
        for (int i = 0; i < ext_[0]; ++i) {
          const int idx[3] = {i, j, k};
          if (idx[a] == 0) continue;
          const std::size_t c =
              (static_cast<std::size_t>(k) * ext_[1] + j) * ext_[0] + i;
          s_[c] += s_[c - stride[a]];
        }
  }
}

double PrefixSum::window_sum(const int lo[3], const int hi[3]) const {
  int clo[3] = {0, 0, 0}, chi[3] = {0, 0, 0};
  for (int a = 0; a < 3; ++a) {
    clo[a] = a < dim_ ? std::max(lo[a], 0) : 0;
    chi[a] = a < dim_ ? std::min(hi[a], ext_[a] - 1) : 0;
    if (chi[a] < clo[a]) return 0.0;
  }
  // inclusion-exclusion over the 2^dim corners
  double sum = 0.0;
  for (int mask = 0; mask < (1 << dim_); ++mask) {
    int idx[3] = {chi[0], chi[1], chi[2]};
    int sign = 1;
    bool skip = false;
    for (int a = 0; a < dim_; ++a)
      if (mask & (1 << a)) {
        idx[a] = clo[a] - 1;
        sign = -sign;
        if (idx[a] < 0) skip = true;
      }
    if (skip) continue;
    const std::size_t c =
        (static_cast<std::size_t>(idx[2]) * ext_[1] + idx[1]) * ext_[0] +
        idx[0];
    sum += sign * s_[c];
  }
  return sum;
}

GridField hl_maximal(const GridField& f, const WindowLattice& lattice) {
  require_radii(f, lattice);
  const PrefixSum ps(f, /*absolute=*/true);
  GridField out(f.dim(), f.box(), f.extents(), f.padding());
  const auto& ext = f.extents();
#pragma omp parallel for collapse(2) schedule(static)
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i) {
        double best = std::abs(f.at(i, j, k));  // one-cell window
        for (int r : lattice.radii) {
          const int lo[3] = {i - r, j - r, k - r};
          const int hi[3] = {i + r, j + r, k + r};
          best = std::max(best,
                          ps.window_sum(lo, hi) / window_cells(f, r));
        }
        out.at(i, j, k) = best;
      }
  return out;
}

GridField sharp_maximal(const GridField& f, const WindowLattice& lattice) {
  require_radii(f, lattice);
  const PrefixSum means(f, /*absolute=*/false);
  GridField out(f.dim(), f.box(), f.extents(), f.padding());
  const auto& ext = f.extents();
#pragma omp parallel for collapse(2) schedule(static)
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i) {
        double best = 0.0;
        for (int r : lattice.radii) {
          const int lo[3] = {i - r, j - r, k - r};
          const int hi[3] = {i + r, j + r, k + r};
          const double cells = window_cells(f, r);
          const double mean = means.window_sum(lo, hi) / cells;
          // direct deviation scan over the in-box part
          double dev = 0.0;
          double in_box = 0.0;
          const int ka = f.dim() > 2 ? std::max(lo[2], 0) : 0;
          const int kb = f.dim() > 2 ? std::min(hi[2], ext[2] - 1) : 0;
          const int ja = f.dim() > 1 ? std::max(lo[1], 0) : 0;
          const int jb = f.dim() > 1 ? std::min(hi[1], ext[1] - 1) : 0;
          const int ia = std::max(lo[0], 0);
          const int ib = std::min(hi[0], ext[0] - 1);
          for (int kk = ka; kk <= kb; ++kk)
            for (int jj = ja; jj <= jb; ++jj)
              for (int ii = ia; ii <= ib; ++ii) {
                dev += std::abs(f.at(ii, jj, kk) - mean);
                in_box += 1.0;
              }
          // zero-extension cells contribute |0 - mean| each
          dev += (cells - in_box) * std::abs(mean);
          best = std::max(best, dev / cells);
        }
        out.at(i, j, k) = best;
      }
  return out;
}

GridField hl_maximal_direct(const GridField& f, const WindowLattice& lattice) {
  require_radii(f, lattice);
  GridField out(f.dim(), f.box(), f.extents(), f.padding());
  const auto& ext = f.extents();
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i) {
        double best = std::abs(f.at(i, j, k));
        for (int r : lattice.radii) {
          double sum = 0.0;
          for (int kk = std::max(k - (f.dim() > 2 ? r : 0), 0);
               kk <= std::min(k + (f.dim() > 2 ? r : 0), ext[2] - 1); ++kk)
            for (int jj = std::max(j - (f.dim() > 1 ? r : 0), 0);
                 jj <= std::min(j + (f.dim() > 1 ? r : 0), ext[1] - 1); ++jj)
              for (int ii = std::max(i - r, 0);
                   ii <= std::min(i + r, ext[0] - 1); ++ii)
                sum += std::abs(f.at(ii, jj, kk));
          best = std::max(best, sum / window_cells(f, r));
        }
        out.at(i, j, k) = best;
      }
  return out;
}

GridField sharp_maximal_direct(const GridField& f,
                               const WindowLattice& lattice) {
  require_radii(f, lattice);
  GridField out(f.dim(), f.box(), f.extents(), f.padding());
  const auto& ext = f.extents();
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i) {
        double best = 0.0;
        for (int r : lattice.radii) {
          const double cells = window_cells(f, r);
          const int ka = std::max(k - (f.dim() > 2 ? r : 0), 0);
          const int kb = std::min(k + (f.dim() > 2 ? r : 0), ext[2] - 1);
          const int ja = std::max(j - (f.dim() > 1 ? r : 0), 0);
          const int jb = std::min(j + (f.dim() > 1 ? r : 0), ext[1] - 1);
          const int ia = std::max(i - r, 0);
          const int ib = std::min(i + r, ext[0] - 1);
          double sum = 0.0, in_box = 0.0;
          for (int kk = ka; kk <= kb; ++kk)
            for (int jj = ja; jj <= jb; ++jj)
              for (int ii = ia; ii <= ib; ++ii) {
                sum += f.at(ii, jj, kk);
                in_box += 1.0;
              }
          const double mean = sum / cells;
          double dev = 0.0;
          for (int kk = ka; kk <= kb; ++kk)
            for (int jj = ja; jj <= jb; ++jj)
              for (int ii = ia; ii <= ib; ++ii)
                dev += std::abs(f.at(ii, jj, kk) - mean);
          dev += (cells - in_box) * std::abs(mean);
          best = std::max(best, dev / cells);
        }
        out.at(i, j, k) = best;
      }
  return out;
}

}  // namespace sobmor
