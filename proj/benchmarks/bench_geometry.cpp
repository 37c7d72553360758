#include <benchmark/benchmark.h>

#include <random>

#include <rbmd/delaunay.hpp>
#include <rbmd/geometry.hpp>

using namespace rbmd;

namespace {

std::vector<Vec2> uniform_points(std::size_t n) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2> p(n);
  for (auto& q : p) q = {u(g), u(g)};
  return p;
}

}  // namespace

static void BM_Delaunay(benchmark::State& state) {
  const auto p = uniform_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(delaunay(p).triangles.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Delaunay)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_RConvexHull(benchmark::State& state) {
  const auto p = uniform_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const Region2D r = r_convex_hull(p, 0.02);
    benchmark::DoNotOptimize(r.loops().data());
  }
}
BENCHMARK(BM_RConvexHull)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Hausdorff(benchmark::State& state) {
  const auto a = uniform_points(static_cast<std::size_t>(state.range(0)));
  auto b = a;
  for (auto& q : b) q.x += 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(a, b));
}
BENCHMARK(BM_Hausdorff)->Arg(100000)->Unit(benchmark::kMillisecond);
