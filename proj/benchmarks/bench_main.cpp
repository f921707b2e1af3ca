#include <random>

#include <benchmark/benchmark.h>

#include "oscillab/oscillab.hpp"

using namespace oscillab;

namespace {

GridFunction noise(const Grid& g) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return GridFunction(g, v);
}

void BM_Luxemburg(benchmark::State& state) {
  const Grid g = Grid::line(-1.0, 1.0, static_cast<int>(state.range(0)));
  const ExponentFunction p = exponent_library("arctan_profile", g);
  const GridFunction f = noise(g);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Luxemburg)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_ApConstant(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const ResolutionLevel level = resolution_level(1, -1.0, 1.0, 0, l, 2);
  const GridFunction w = weight_library("power:0.5", level.grid);
  for (auto _ : state) benchmark::DoNotOptimize(ap_constant(w, 2.0, level.family).value);
}
BENCHMARK(BM_ApConstant)->DenseRange(6, 12, 2);

void BM_Hilbert(benchmark::State& state) {
  const Grid g = Grid::line(-4.0, 4.0, static_cast<int>(state.range(0)));
  const OperatorHandle op = make_operator(make_kernel("hilbert", 1));
  const GridFunction f = noise(g);
  for (auto _ : state) benchmark::DoNotOptimize(apply(op, f)[0]);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hilbert)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_BilinearRieszIndicators(benchmark::State& state) {
  const Grid g = Grid::line(-8.0, 8.0, static_cast<int>(state.range(0)));
  const OperatorHandle op = make_operator(make_kernel("bilinear_riesz", 1));
  const GridFunction a = indicator(g, Cube{{1.0, 0.0}, 0.5});
  const GridFunction b = indicator(g, Cube{{-1.0, 0.0}, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(apply(op, a, b)[0]);
}
BENCHMARK(BM_BilinearRieszIndicators)->RangeMultiplier(2)->Range(128, 512);

void BM_FourierReciprocal(benchmark::State& state) {
  const KernelSpec k = make_kernel("bilinear_riesz", 1);
  const ExtractionGeometry geo = select_geometry(k, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_reciprocal(k, geo, static_cast<int>(state.range(0))).residual);
}
BENCHMARK(BM_FourierReciprocal)->Arg(9)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
