#include <benchmark/benchmark.h>

#include <rbmd/density.hpp>
#include <rbmd/dynamics.hpp>

using namespace rbmd;

namespace {

const std::vector<Vec2>& samples(std::size_t n) {
  static std::vector<Vec2> cache;
  if (cache.size() != n) {
    cache = simulate_rbmd(holed_ellipse(), DriftFunction::linear(1.0), {0, 0}, 0.003, n - 1, 1).positions;
  }
  return cache;
}

}  // namespace

static void BM_GaussianGrid(benchmark::State& state) {
  const auto& x = samples(static_cast<std::size_t>(state.range(0)));
  const Grid2D grid(holed_ellipse().bbox(), 200, 200);
  for (auto _ : state) {
    const DensityEstimate est(x, Kernel::gaussian(), 0.1);
    benchmark::DoNotOptimize(evaluate_on_grid(est, grid).values.data());
  }
}
BENCHMARK(BM_GaussianGrid)->Arg(100000)->Arg(500000)->Unit(benchmark::kMillisecond);

static void BM_EpanechnikovGrid(benchmark::State& state) {
  const auto& x = samples(static_cast<std::size_t>(state.range(0)));
  const Grid2D grid(holed_ellipse().bbox(), 200, 200);
  for (auto _ : state) {
    const DensityEstimate est(x, Kernel::epanechnikov(), 0.1);
    benchmark::DoNotOptimize(evaluate_on_grid(est, grid).values.data());
  }
}
BENCHMARK(BM_EpanechnikovGrid)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_GaussianAtSamples(benchmark::State& state) {
  const auto& x = samples(static_cast<std::size_t>(state.range(0)));
  const DensityEstimate est(x, Kernel::gaussian(), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(est.evaluate_many(x).data());
}
BENCHMARK(BM_GaussianAtSamples)->Arg(100000)->Unit(benchmark::kMillisecond);
