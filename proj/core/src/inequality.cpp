#include "sobmor/inequality.hpp"

#include <algorithm>
#include <cmath>

namespace sobmor {

namespace {

bool is_zero(const GridField& f) {
  for (double v : f.values())
    if (v != 0.0) return false;
  return true;
}

double window_cells(int dim, int radius) {
  double c = 1.0;
  for (int a = 0; a < dim; ++a) c *= double(2 * radius + 1);
  return c;
}

}  // namespace

double poincare_ratio(const GridField& u, const WindowLattice& lattice,
                      int center_stride) {
  if (lattice.max_radius() > u.padding())
    throw Error(ErrorCode::RadiusExceedsPadding, "lattice exceeds padding");
  const PrefixSum mean_u(u, /*absolute=*/false);
  const GridField gmag = gradient(u).magnitude();
  const PrefixSum mean_g(gmag, /*absolute=*/false);
  const auto& ext = u.extents();
  const int stride = std::max(center_stride, 1);

  double best = 0.0;
  for (int k = 0; k < ext[2]; k += (u.dim() > 2 ? stride : 1))
    for (int j = 0; j < ext[1]; j += (u.dim() > 1 ? stride : 1))
      for (int i = 0; i < ext[0]; i += stride) {
        if (!u.in_interior(i, j, k)) continue;
        for (int r : lattice.radii) {
          const int lo[3] = {i - r, j - r, k - r};
          const int hi[3] = {i + r, j + r, k + r};
          const double cells = window_cells(u.dim(), r);
          const double gmean = mean_g.window_sum(lo, hi) / cells;
          if (gmean < 1e-14) continue;
          const double mean = mean_u.window_sum(lo, hi) / cells;
          double dev = 0.0, in_box = 0.0;
          const int ka = u.dim() > 2 ? std::max(lo[2], 0) : 0;
          const int kb = u.dim() > 2 ? std::min(hi[2], ext[2] - 1) : 0;
          const int ja = u.dim() > 1 ? std::max(lo[1], 0) : 0;
          const int jb = u.dim() > 1 ? std::min(hi[1], ext[1] - 1) : 0;
          for (int kk = ka; kk <= kb; ++kk)
            for (int jj = ja; jj <= jb; ++jj)
              for (int ii = std::max(lo[0], 0);
                   ii <= std::min(hi[0], ext[0] - 1); ++ii) {
                dev += std::abs(u.at(ii, jj, kk) - mean);
                in_box += 1.0;
              }
          dev += (cells - in_box) * std::abs(mean);
          const double rho = (r + 0.5) * u.h();
          best = std::max(best, (dev / cells) / (rho * gmean));
        }
      }
  return best;
}

Lemma1Report verify_lemma1(const GridField& u, const ParamSet& ps,
                           const WindowLattice& lattice) {
  if (is_zero(u))
    throw Error(ErrorCode::ZeroField, "lemma verification needs u != 0");
  if (lattice.max_radius() > u.padding())
    throw Error(ErrorCode::RadiusExceedsPadding, "lattice exceeds padding");

  Lemma1Report rep;
  const double d = ps.d;
  rep.lhs = lp_integral(u, ps.p * (ps.q / d + 1.0));
  rep.rhs_grad = lp_integral(gradient(u).magnitude(), ps.p);

  const PrefixSum abs_u(u, /*absolute=*/true);
  const auto& ext = u.extents();
  double sup = 0.0;
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i)
        for (int r : lattice.radii) {
          const int lo[3] = {i - r, j - r, k - r};
          const int hi[3] = {i + r, j + r, k + r};
          const double rho = (r + 0.5) * u.h();
          const double avg = abs_u.window_sum(lo, hi) /
                             window_cells(u.dim(), r);
          sup = std::max(sup, std::pow(rho, d / ps.q) * avg);
        }
  rep.rhs_morrey = std::pow(sup, ps.q * ps.p / d);
  rep.ratio = rep.lhs / (rep.rhs_grad * rep.rhs_morrey);
  return rep;
}

FsRatios verify_fs_equivalence(const GridField& f, double s,
                               const WindowLattice& lattice) {
  if (!(s > 1.0))
    throw Error(ErrorCode::SOutOfRange, "Lebesgue exponent must satisfy s > 1");
  if (is_zero(f))
    throw Error(ErrorCode::ZeroField, "equivalence needs f != 0");
  const double nf = lp_norm(f, s);
  const double nhl = lp_norm(hl_maximal(f, lattice), s);
  const double nsharp = lp_norm(sharp_maximal(f, lattice), s);
  return {nf / nsharp, nsharp / nf, nf / nhl, nhl / nf};
}

double verify_sobolev(const GridField& u, const ParamSet& ps) {
  if (is_zero(u))
    throw Error(ErrorCode::ZeroField, "Sobolev ratio needs u != 0");
  const double num = lp_norm(u, ps.sobolev_exp);
  const double den = std::pow(lp_integral(gradient(u).magnitude(), ps.p),
                              1.0 / ps.p);
  return num / den;
}

HolderReport verify_holder_chain(const GridField& u, const ParamSet& ps,
                                 double r) {
  if (is_zero(u))
    throw Error(ErrorCode::ZeroField, "interpolation bound needs u != 0");
  const double r_low = ps.r_low, p_star = ps.sobolev_exp;
  if (!(r >= r_low && r <= p_star))
    throw Error(ErrorCode::ROutOfRange,
                "r must lie in [" + std::to_string(r_low) + ", " +
                    std::to_string(p_star) + "]");
  HolderReport rep;
  rep.theta_interp =
      (1.0 / r - 1.0 / p_star) / (1.0 / r_low - 1.0 / p_star);
  rep.lhs = lp_integral(u, r);
  const double a = lp_integral(u, r_low);
  const double b = lp_integral(u, p_star);
  rep.bound = std::pow(a, r * rep.theta_interp / r_low) *
              std::pow(b, r * (1.0 - rep.theta_interp) / p_star);
  rep.slack = rep.bound - rep.lhs;
  return rep;
}

}  // namespace sobmor
