#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "sobmor/grid.hpp"
#include "sobmor/maximal.hpp"

using namespace sobmor;

namespace {

Box square_box(int dim, double half) {
  Box b;
  for (int a = 0; a < dim; ++a) {
    b.lo[a] = -half;
    b.hi[a] = half;
  }
  return b;
}

GridField field_1d(int cells, int padding) {
  return GridField(1, square_box(1, 1.0), {cells, 1, 1}, padding);
}

}  // namespace

TEST_CASE("grid construction guards") {
  CHECK_THROWS_AS(GridField(4, square_box(3, 1.0), {16, 16, 16}, 2), Error);
  CHECK_THROWS_AS(GridField(1, square_box(1, 1.0), {4, 1, 1}, 0), Error);
  CHECK_THROWS_AS(GridField(1, square_box(1, 1.0), {16, 1, 1}, 8), Error);
  Box skew = square_box(2, 1.0);
  skew.hi[1] = 3.0;  // non-uniform cell size
  CHECK_THROWS_AS(GridField(2, skew, {16, 16, 1}, 2), Error);
}

TEST_CASE("seeded field generation is deterministic") {
  TestFunctionSpec spec;
  spec.seed = 7;
  const Box box = square_box(2, 1.0);
  const std::array<int, 3> ext{64, 64, 1};

  spec.count = 0;
  const GridField zero = random_field(spec, 2, box, ext, 16);
  for (double v : zero.values()) CHECK(v == 0.0);

  spec.count = 3;
  const GridField a = random_field(spec, 2, box, ext, 16);
  const GridField b = random_field(spec, 2, box, ext, 16);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a.values()[i] == b.values()[i]);

  spec.seed = 8;
  const GridField c = random_field(spec, 2, box, ext, 16);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    differs = differs || a.values()[i] != c.values()[i];
  CHECK(differs);

  // support stays out of the padding margin
  const auto& e = a.extents();
  for (int j = 0; j < e[1]; ++j)
    for (int i = 0; i < e[0]; ++i)
      if (!a.in_interior(i, j)) CHECK(a.at(i, j) == 0.0);
}

TEST_CASE("Lp integrals") {
  GridField f(2, square_box(2, 1.0), {8, 8, 1}, 1);
  CHECK(lp_norm(f, 1.0) == 0.0);

  f.at(4, 4) = 1.0;  // one cell of volume h^2 = 0.25^2... with half=1, h=0.25
  CHECK(f.h() == doctest::Approx(0.25));
  CHECK(lp_norm(f, 1.0) == doctest::Approx(0.0625));
  CHECK_THROWS_AS(lp_norm(f, 0.5), Error);
  CHECK_NOTHROW(lp_integral(f, 0.5));

  // one summand, wide Gaussian, fine grid: matches the closed form within 1%
  GridField g(2, square_box(2, 1.0), {256, 256, 1}, 8);
  const double w = 0.08, amp = 1.7;
  const auto& ext = g.extents();
  for (int j = 0; j < ext[1]; ++j)
    for (int i = 0; i < ext[0]; ++i) {
      const auto x = g.cell_center(i, j);
      g.at(i, j) = amp * std::exp(-(x[0] * x[0] + x[1] * x[1]) /
                                  (2.0 * w * w));
    }
  g.clear_margin();
  for (double s : {1.0, 1.5, 2.0})
    CHECK(lp_integral(g, s) ==
          doctest::Approx(oracles::gaussian_ls_integral(amp, w, s, 2))
              .epsilon(0.01));
}

TEST_CASE("gradient accuracy") {
  GridField c(2, square_box(2, 1.0), {32, 32, 1}, 4);
  for (double& v : c.values()) v = 0.75;
  const VectorField gc = gradient(c);
  for (int a = 0; a < 2; ++a)
    for (double v : gc.comp[a].values()) CHECK(v == 0.0);

  // linear ramp: central differences exact in the interior
  GridField ramp(2, square_box(2, 1.0), {32, 32, 1}, 4);
  const double slope = 1.375;
  const auto& ext = ramp.extents();
  for (int j = 0; j < ext[1]; ++j)
    for (int i = 0; i < ext[0]; ++i)
      ramp.at(i, j) = slope * ramp.cell_center(i, j)[0];
  const VectorField gr = gradient(ramp);
  for (int j = 1; j < ext[1] - 1; ++j)
    for (int i = 1; i < ext[0] - 1; ++i) {
      CHECK(gr.comp[0].at(i, j) == doctest::Approx(slope).epsilon(1e-13));
      CHECK(gr.comp[1].at(i, j) == doctest::Approx(0.0).epsilon(1e-13));
    }

  // second-order convergence on a smooth field: halving h cuts the max
  // interior error by about 4
  const auto max_err = [](int cells) {
    GridField g(1, square_box(1, 1.0), {cells, 1, 1}, 2);
    const double w = 0.2;
    for (int i = 0; i < cells; ++i) {
      const double x = g.cell_center(i)[0];
      g.at(i) = std::exp(-x * x / (2.0 * w * w));
    }
    const VectorField dg = gradient(g);
    double err = 0.0;
    for (int i = 1; i < cells - 1; ++i) {
      const double x = g.cell_center(i)[0];
      const double exact =
          -x / (w * w) * std::exp(-x * x / (2.0 * w * w));
      err = std::max(err, std::abs(dg.comp[0].at(i) - exact));
    }
    return err;
  };
  const double ratio = max_err(128) / max_err(256);
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("maximal function basics") {
  // constant field: M f = c wherever the window stays inside the box
  GridField c(2, square_box(2, 1.0), {32, 32, 1}, 8);
  for (double& v : c.values()) v = 0.6;
  const WindowLattice lat = WindowLattice::up_to(8);
  const GridField mc = hl_maximal(c, lat);
  for (int j = 8; j < 24; ++j)
    for (int i = 8; i < 24; ++i)
      CHECK(mc.at(i, j) == doctest::Approx(0.6).epsilon(1e-13));

  // M f >= |f| pointwise via the one-cell window
  TestFunctionSpec spec;
  spec.seed = 5;
  const GridField f = random_field(spec, 2, square_box(2, 1.0), {64, 64, 1},
                                   16);
  const GridField mf = hl_maximal(f, WindowLattice::up_to(16));
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(mf.values()[i] >= std::abs(f.values()[i]));

  CHECK_THROWS_AS(hl_maximal(f, WindowLattice::up_to(32)), Error);
}

TEST_CASE("single-cell spike averages") {
  GridField f = field_1d(64, 16);
  f.at(32) = 1.0;
  const WindowLattice lat = WindowLattice::up_to(16);
  const GridField mf = hl_maximal(f, lat);
  const GridField ref = hl_maximal_direct(f, lat);
  for (int i = 0; i < 64; ++i)
    CHECK(std::abs(mf.at(i) - ref.at(i)) <= 1e-13);
  // at distance k, the smallest dyadic radius >= k covers the spike
  for (int k : {1, 2, 3, 5, 8}) {
    int rho = 1;
    while (rho < k) rho *= 2;
    CHECK(mf.at(32 + k) == doctest::Approx(1.0 / (2 * rho + 1)));
  }
}

TEST_CASE("positive homogeneity is exact") {
  TestFunctionSpec spec;
  spec.seed = 31;
  const GridField f = random_field(spec, 2, square_box(2, 1.0), {64, 64, 1},
                                   16);
  GridField f2 = f;
  for (double& v : f2.values()) v *= 2.0;
  const WindowLattice lat = WindowLattice::up_to(16);
  const GridField mf = hl_maximal(f, lat);
  const GridField mf2 = hl_maximal(f2, lat);
  const GridField sf = sharp_maximal(f, lat);
  const GridField sf2 = sharp_maximal(f2, lat);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(mf2.values()[i] == 2.0 * mf.values()[i]);
    CHECK(sf2.values()[i] == 2.0 * sf.values()[i]);
  }
}

TEST_CASE("sharp maximal oscillation") {
  // constant field oscillates nowhere
  GridField c(1, square_box(1, 1.0), {64, 1, 1}, 16);
  for (double& v : c.values()) v = 2.5;
  const GridField sc = sharp_maximal(c, WindowLattice::up_to(16));
  for (int i = 16; i < 48; ++i)
    CHECK(std::abs(sc.at(i)) <= 1e-12);

  // +-1 checkerboard, radius-1 windows: means +-1/3, mean deviation 8/9
  GridField cb = field_1d(64, 8);
  for (int i = 0; i < 64; ++i) cb.at(i) = (i % 2 == 0) ? 1.0 : -1.0;
  WindowLattice r1;
  r1.radii = {1};
  const GridField scb = sharp_maximal(cb, r1);
  for (int i = 8; i < 56; ++i)
    CHECK(scb.at(i) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));

  // adding a constant does not change the oscillation (interior cells)
  TestFunctionSpec spec;
  spec.seed = 13;
  GridField f = random_field(spec, 1, square_box(1, 1.0), {128, 1, 1}, 32);
  const WindowLattice lat = WindowLattice::up_to(32);
  const GridField sf = sharp_maximal(f, lat);
  GridField fc = f;
  for (double& v : fc.values()) v += 0.4;
  const GridField sfc = sharp_maximal(fc, lat);
  for (int i = 32; i < 96; ++i)
    CHECK(sfc.at(i) == doctest::Approx(sf.at(i)).epsilon(1e-12));
}

TEST_CASE("sublinearity and the 2M domination") {
  TestFunctionSpec spec;
  const Box box = square_box(2, 1.0);
  const WindowLattice lat = WindowLattice::up_to(16);
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    spec.seed = seed;
    const GridField f = random_field(spec, 2, box, {64, 64, 1}, 16);
    spec.seed = seed + 1000;
    const GridField g = random_field(spec, 2, box, {64, 64, 1}, 16);
    GridField fg = f;
    for (std::size_t i = 0; i < fg.size(); ++i)
      fg.values()[i] += g.values()[i];
    const GridField mf = hl_maximal(f, lat);
    const GridField mg = hl_maximal(g, lat);
    const GridField mfg = hl_maximal(fg, lat);
    const GridField sf = sharp_maximal(f, lat);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(mfg.values()[i] <= mf.values()[i] + mg.values()[i] + 1e-12);
      CHECK(sf.values()[i] <= 2.0 * mf.values()[i] + 1e-12);
    }
  }
}

TEST_CASE("prefix sums match the direct scans") {
  TestFunctionSpec spec;
  for (int cells : {33, 64, 128}) {
    spec.seed = 40 + static_cast<std::uint64_t>(cells);
    const int pad = cells / 4;
    const GridField f =
        random_field(spec, 1, square_box(1, 1.0), {cells, 1, 1}, pad);
    const WindowLattice lat = WindowLattice::up_to(pad);
    const GridField a = hl_maximal(f, lat);
    const GridField b = hl_maximal_direct(f, lat);
    const GridField sa = sharp_maximal(f, lat);
    const GridField sb = sharp_maximal_direct(f, lat);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(std::abs(a.values()[i] - b.values()[i]) <= 1e-13);
      CHECK(std::abs(sa.values()[i] - sb.values()[i]) <= 1e-13);
    }
  }
  spec.seed = 77;
  const GridField f2 =
      random_field(spec, 2, square_box(2, 1.0), {32, 32, 1}, 8);
  const WindowLattice lat2 = WindowLattice::up_to(8);
  const GridField a2 = hl_maximal(f2, lat2);
  const GridField b2 = hl_maximal_direct(f2, lat2);
  for (std::size_t i = 0; i < f2.size(); ++i)
    CHECK(std::abs(a2.values()[i] - b2.values()[i]) <= 1e-12);
}

TEST_CASE("binary field round trip") {
  TestFunctionSpec spec;
  spec.seed = 99;
  const GridField f =
      random_field(spec, 2, square_box(2, 1.0), {64, 48, 1}, 0);
  const auto path = std::filesystem::temp_directory_path() /
                    "sobmor_test_field.bin";
  write_field(path, f);
  const GridField g = read_field(path, 0);
  CHECK(g.dim() == f.dim());
  CHECK(g.extents() == f.extents());
  CHECK(g.h() == f.h());
  CHECK(g.box().lo == f.box().lo);
  CHECK(g.box().hi == f.box().hi);
  REQUIRE(g.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(g.values()[i] == f.values()[i]);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_field("/nonexistent/sobmor.bin"), Error);
}
