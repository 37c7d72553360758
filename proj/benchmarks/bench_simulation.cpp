#include <benchmark/benchmark.h>

#include <rbmd/dynamics.hpp>

using namespace rbmd;

static void BM_SimulateHoledEllipse(benchmark::State& state) {
  const Domain s = holed_ellipse();
  const DriftFunction mu = DriftFunction::linear(1.0);
  for (auto _ : state) {
    Trajectory t = simulate_rbmd(s, mu, {0, 0}, 0.003, static_cast<std::uint64_t>(state.range(0)), 1);
    benchmark::DoNotOptimize(t.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateHoledEllipse)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ProjectEllipse(benchmark::State& state) {
  const Domain e = Domain::ellipse({0, 0}, 1.5, 1.0);
  Vec2 z{2.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.project(z));
    z.y += 1e-9;
  }
}
BENCHMARK(BM_ProjectEllipse);
