#include "sobmor/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; add byte swaps for this host");

namespace sobmor {

GridField::GridField(int dim, const Box& box,
                     const std::array<int, 3>& extents, int padding)
    : dim_(dim), ext_{1, 1, 1}, box_(box), padding_(padding) {
  if (dim < 1 || dim > 3)
    throw Error(ErrorCode::UnsupportedDim,
                "grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) {
    if (extents[a] < 8)
      throw Error(ErrorCode::UnsupportedDim,
                  "extents must be >= 8 cells per axis");
    ext_[a] = extents[a];
    total *= static_cast<std::size_t>(extents[a]);
  }
  h_ = (box.hi[0] - box.lo[0]) / ext_[0];
  for (int a = 0; a < dim; ++a) {
    const double ha = (box.hi[a] - box.lo[a]) / ext_[a];
    if (!(ha > 0.0) || std::abs(ha - h_) > 1e-12 * h_)
      throw Error(ErrorCode::UnsupportedDim,
                  "cell size must be uniform across axes");
  }
  if (padding < 0 || 2 * padding >= *std::min_element(ext_.begin(),
                                                      ext_.begin() + dim))
    throw Error(ErrorCode::RadiusExceedsPadding,
                "padding must be >= 0 and below half the smallest extent");
  values_.assign(total, 0.0);
}

std::array<double, 3> GridField::cell_center(int i, int j, int k) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const int idx[3] = {i, j, k};
  for (int a = 0; a < dim_; ++a) x[a] = box_.lo[a] + (idx[a] + 0.5) * h_;
  return x;
}

bool GridField::in_interior(int i, int j, int k) const {
  const int idx[3] = {i, j, k};
  for (int a = 0; a < dim_; ++a)
    if (idx[a] < padding_ || idx[a] >= ext_[a] - padding_) return false;
  return true;
}

void GridField::clear_margin() {
  for (int k = 0; k < ext_[2]; ++k)
    for (int j = 0; j < ext_[1]; ++j)
      for (int i = 0; i < ext_[0]; ++i)
        if (!in_interior(i, j, k)) values_[index(i, j, k)] = 0.0;
}

namespace {

// canonical uniform in [0,1) from raw generator output
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * canonical(rng);
}

struct Summand {
  std::array<double, 3> center{0, 0, 0};
  double width = 1.0;
  double amp = 1.0;
};

}  // namespace

GridField random_field(const TestFunctionSpec& spec, int dim, const Box& box,
                       const std::array<int, 3>& extents, int padding) {
  GridField f(dim, box, extents, padding);
  std::mt19937_64 rng(spec.seed);

  const double interior_half =
      0.5 * (box.hi[0] - box.lo[0]) - padding * f.h();
  std::vector<Summand> terms(static_cast<std::size_t>(spec.count));
  for (auto& s : terms) {
    double max_c = 0.0;
    for (int a = 0; a < dim; ++a) {
      s.center[a] = uniform(rng, -spec.center_halfwidth, spec.center_halfwidth);
      max_c = std::max(max_c, std::abs(s.center[a]));
    }
    s.width = uniform(rng, spec.width_lo, spec.width_hi);
    if (spec.kind == SummandKind::ScaledBump)
      s.width = std::max(std::min(s.width, 0.9 * (interior_half - max_c)),
                         4.0 * f.h());
    s.amp = uniform(rng, spec.amp_lo, spec.amp_hi);
    if (rng() & 1u) s.amp = -s.amp;
  }

  const auto eval = [&](const std::array<double, 3>& x) {
    double v = 0.0;
    for (const auto& s : terms) {
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double dxa = x[a] - s.center[a];
        d2 += dxa * dxa;
      }
      if (spec.kind == SummandKind::Gaussian) {
        v += s.amp * std::exp(-d2 / (2.0 * s.width * s.width));
      } else {
        const double u2 = d2 / (s.width * s.width);
        if (u2 < 1.0) v += s.amp * std::exp(1.0 - 1.0 / (1.0 - u2));
      }
    }
    return v;
  };

  const auto& ext = f.extents();
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i)
        if (f.in_interior(i, j, k))
          f.at(i, j, k) = eval(f.cell_center(i, j, k));
  return f;
}

double lp_integral(const GridField& f, double s) {
  if (!(s > 0.0))
    throw Error(ErrorCode::SOutOfRange, "lp_integral requires s > 0");
  double sum = 0.0;
  for (double v : f.values())
    if (v != 0.0) sum += std::pow(std::abs(v), s);
  return sum * std::pow(f.h(), double(f.dim()));
}

double lp_norm(const GridField& f, double s) {
  if (!(s >= 1.0))
    throw Error(ErrorCode::SOutOfRange, "lp_norm requires s >= 1");
  return std::pow(lp_integral(f, s), 1.0 / s);
}

GridField VectorField::magnitude() const {
  GridField out = comp.at(0);
  for (std::size_t a = 1; a < comp.size(); ++a) {
    const auto src = comp[a].values();
    auto dst = out.values();
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] = std::hypot(dst[i], src[i]);
  }
  for (double& v : out.values()) v = std::abs(v);
  return out;
}

VectorField gradient(const GridField& f) {
  VectorField g;
  g.dim = f.dim();
  const auto& ext = f.extents();
  const double inv2h = 1.0 / (2.0 * f.h());
  const double invh = 1.0 / f.h();
  for (int a = 0; a < f.dim(); ++a) {
    GridField c(f.dim(), f.box(), ext, f.padding());
    const int stride[3] = {1, ext[0], ext[0] * ext[1]};
    const int na = ext[a];
    for (int k = 0; k < ext[2]; ++k)
      for (int j = 0; j < ext[1]; ++j)
        for (int i = 0; i < ext[0]; ++i) {
          const int idx[3] = {i, j, k};
          const std::size_t c0 = f.index(i, j, k);
          double d;
          if (idx[a] == 0)
            d = (f.values()[c0 + stride[a]] - f.values()[c0]) * invh;
          else if (idx[a] == na - 1)
            d = (f.values()[c0] - f.values()[c0 - stride[a]]) * invh;
          else
            d = (f.values()[c0 + stride[a]] - f.values()[c0 - stride[a]]) *
                inv2h;
          c.values()[c0] = d;
        }
    g.comp.push_back(std::move(c));
  }
  return g;
}

void write_field(const std::filesystem::path& path, const GridField& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const auto put32 = [&](std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), 4);
  };
  const auto put64 = [&](double v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
  };
  put32(static_cast<std::uint32_t>(f.dim()));
  for (int a = 0; a < f.dim(); ++a)
    put32(static_cast<std::uint32_t>(f.extents()[a]));
  put64(f.h());
  for (int a = 0; a < f.dim(); ++a) put64(f.box().lo[a]);
  for (int a = 0; a < f.dim(); ++a) put64(f.box().hi[a]);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * 8));
  if (!out)
    throw Error(ErrorCode::IoError, "short write to " + path.string());
}

GridField read_field(const std::filesystem::path& path, int padding) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const auto get32 = [&] {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  const auto get64 = [&] {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  const int dim = static_cast<int>(get32());
  if (dim < 1 || dim > 3)
    throw Error(ErrorCode::IoError,
                "bad field header in " + path.string());
  std::array<int, 3> ext{1, 1, 1};
  for (int a = 0; a < dim; ++a) ext[a] = static_cast<int>(get32());
  const double h = get64();
  Box box;
  for (int a = 0; a < dim; ++a) box.lo[a] = get64();
  for (int a = 0; a < dim; ++a) box.hi[a] = get64();
  (void)h;
  int pad = padding;
  if (pad < 0) pad = *std::min_element(ext.begin(), ext.begin() + dim) / 4;
  GridField f(dim, box, ext, pad);
  in.read(reinterpret_cast<char*>(f.values().data()),
          static_cast<std::streamsize>(f.size() * 8));
  if (!in)
    throw Error(ErrorCode::IoError, "truncated field file " + path.string());
  return f;
}

}  // namespace sobmor
