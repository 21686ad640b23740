#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sobmor/error.hpp"

namespace sobmor {

struct Box {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{0.0, 0.0, 0.0};
};

// Uniform-grid sample of a compactly supported function on a box in R^d,
// d in {1,2,3}. Values live at cell centers; a zero margin of `padding`
// cells keeps every maximal-operator window inside the zero extension.
class GridField {
 public:
  GridField(int dim, const Box& box, const std::array<int, 3>& extents,
            int padding);

  int dim() const { return dim_; }
  const std::array<int, 3>& extents() const { return ext_; }
  double h() const { return h_; }
  int padding() const { return padding_; }
  const Box& box() const { return box_; }

  std::size_t size() const { return values_.size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  std::size_t index(int i, int j = 0, int k = 0) const {
    return (static_cast<std::size_t>(k) * ext_[1] + j) * ext_[0] + i;
  }
  double& at(int i, int j = 0, int k = 0) { return values_[index(i, j, k)]; }
  double at(int i, int j = 0, int k = 0) const {
    return values_[index(i, j, k)];
  }

  std::array<double, 3> cell_center(int i, int j = 0, int k = 0) const;

  // true when (i,j,k) lies at least `padding` cells from every box face
  bool in_interior(int i, int j = 0, int k = 0) const;

  // zero out the padding margin (support must stay strictly interior)
  void clear_margin();

 private:
  int dim_;
  std::array<int, 3> ext_;
  double h_;
  Box box_;
  int padding_;
  std::vector<double> values_;
};

enum class SummandKind { Gaussian, ScaledBump };

// Deterministic random test family: `count` summands with centers, widths,
// amplitudes and signs drawn from a fixed-seed generator. Uniform doubles
// are derived from raw mt19937_64 output, so fields are bit-reproducible.
struct TestFunctionSpec {
  std::uint64_t seed = 42;
  int count = 3;
  SummandKind kind = SummandKind::Gaussian;
  double center_halfwidth = 0.25;  // per-axis center range, box units
  double width_lo = 0.02;
  double width_hi = 0.06;
  double amp_lo = 0.5;
  double amp_hi = 2.0;
};

GridField random_field(const TestFunctionSpec& spec, int dim, const Box& box,
                       const std::array<int, 3>& extents, int padding);

// integral of |f|^s by the midpoint rule (s > 0)
double lp_integral(const GridField& f, double s);
// (integral of |f|^s)^{1/s}, s >= 1
double lp_norm(const GridField& f, double s);

struct VectorField {
  int dim = 0;
  std::vector<GridField> comp;

  GridField magnitude() const;
};

// Central differences in the interior, one-sided at the box faces.
VectorField gradient(const GridField& f);

// Plain binary layout: u32 dim, u32 extents[dim], f64 h, f64 box_lo[dim],
// f64 box_hi[dim], then row-major f64 values (little-endian throughout).
// Padding is not part of the file; read_field derives it (quarter of the
// smallest extent) unless told otherwise.
void write_field(const std::filesystem::path& path, const GridField& f);
GridField read_field(const std::filesystem::path& path, int padding = -1);

}  // namespace sobmor
