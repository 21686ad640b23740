#include <benchmark/benchmark.h>

#include "sobmor/family.hpp"
#include "sobmor/inequality.hpp"
#include "sobmor/maximal.hpp"
#include "sobmor/sigma.hpp"

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

GridField bench_field(int cells) {
  TestFunctionSpec spec;
  spec.seed = 42;
  return random_field(spec, 2, square_box(2, 1.0), {cells, cells, 1},
                      cells / 4);
}

}  // namespace

static void BM_HlMaximal(benchmark::State& state) {
  const int cells = static_cast<int>(state.range(0));
  const GridField f = bench_field(cells);
  const WindowLattice lat = WindowLattice::up_to(cells / 4);
  for (auto _ : state) benchmark::DoNotOptimize(hl_maximal(f, lat));
}
BENCHMARK(BM_HlMaximal)->Arg(128)->Arg(256);

static void BM_SharpMaximal(benchmark::State& state) {
  const int cells = static_cast<int>(state.range(0));
  const GridField f = bench_field(cells);
  const WindowLattice lat = WindowLattice::up_to(cells / 4);
  for (auto _ : state) benchmark::DoNotOptimize(sharp_maximal(f, lat));
}
BENCHMARK(BM_SharpMaximal)->Arg(64)->Arg(128);

static void BM_SigmaEval(benchmark::State& state) {
  const SigmaTrain sig(OffsetSchedule(0.5, 28),
                       Profile1D(ProfileKind::Trapezoid));
  double t = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sig(t));
    t += 17.3;
    if (t > 2.5e8) t = 3.0;
  }
}
BENCHMARK(BM_SigmaEval);

static void BM_SigmaMorreySup(benchmark::State& state) {
  const SigmaTrain sig(OffsetSchedule(0.5, static_cast<int>(state.range(0))),
                       Profile1D(ProfileKind::Trapezoid));
  for (auto _ : state)
    benchmark::DoNotOptimize(sig.morrey_sup(1.5, 0.5, 2000));
}
BENCHMARK(BM_SigmaMorreySup)->Arg(16)->Arg(20);

static void BM_FamilyMorreySup(benchmark::State& state) {
  const CexFamily fam(
      validate(2, 1.5, 2.0, 1.5, ParamMode::Counterexample));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fam.morrey_sup(n));
}
BENCHMARK(BM_FamilyMorreySup)->Arg(30)->Arg(44);

static void BM_ScalingFit(benchmark::State& state) {
  const CexFamily fam(
      validate(2, 1.5, 2.0, 1.5, ParamMode::Counterexample));
  for (auto _ : state)
    benchmark::DoNotOptimize(fam.scaling_fit(2.5, 30, 44));
}
BENCHMARK(BM_ScalingFit);

BENCHMARK_MAIN();
