#include <benchmark/benchmark.h>

#include <vector>

#include "cgraph/kernels.hpp"
#include "cgraph/rng.hpp"

using namespace cgraph;

namespace {

std::vector<Vec2> random_points(std::size_t n, double extent) {
  Rng rng(12345);
  std::vector<Vec2> pts(n);
  for (auto& p : pts) p = {draw_unit(rng) * extent, draw_unit(rng) * extent};
  return pts;
}

void BM_Repulsion(benchmark::State& state, kernels::Backend backend) {
  auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1000.0);
  std::vector<Vec2> disp(pts.size());
  for (auto _ : state) {
    std::fill(disp.begin(), disp.end(), Vec2{});
    kernels::repulsion(backend, pts, 3600.0, disp);
    benchmark::DoNotOptimize(disp.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_NearestSite(benchmark::State& state, kernels::Backend backend) {
  auto sites = random_points(static_cast<std::size_t>(state.range(0)), 1000.0);
  GridSpec grid{200, 200, 5.0};
  std::vector<std::int32_t> owner(static_cast<std::size_t>(grid.columns * grid.rows));
  for (auto _ : state) {
    kernels::nearest_site(backend, sites, grid, 60.0, owner);
    benchmark::DoNotOptimize(owner.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Repulsion, serial, kernels::Backend::Serial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_Repulsion, parallel, kernels::Backend::Parallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(BM_NearestSite, serial, kernels::Backend::Serial)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK_CAPTURE(BM_NearestSite, parallel, kernels::Backend::Parallel)->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
