#include <benchmark/benchmark.h>

#include "wavecast/farm_power.hpp"
#include "wavecast/hydro.hpp"
#include "wavecast/landscape.hpp"

using namespace wavecast;

namespace {

std::vector<std::pair<double, double>> grid_layout(std::size_t n) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(70.0 * (i % 8), 70.0 * (i / 8));
  return out;
}

void BM_SolveMotion(benchmark::State& state) {
  const auto fs = sphere_farm(grid_layout(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_motion(fs, 0.8, 0.0));
}
BENCHMARK(BM_SolveMotion)->Arg(1)->Arg(16)->Arg(49);

void BM_SolveMotionDense(benchmark::State& state) {
  const auto fs = sphere_farm(grid_layout(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_motion_dense(fs, 0.8, 0.0));
}
BENCHMARK(BM_SolveMotionDense)->Arg(16)->Arg(49);

void BM_Landscape(benchmark::State& state) {
  const FarmLayout fixed{{{100, 100}, {300, 250}, {450, 400}}};
  const std::vector<SeaState> climate{{2.0, 9.0, 0.0, 1.0}};
  SphereOptions so;
  so.interaction = true;
  LandscapeOptions opt;
  opt.step = static_cast<double>(state.range(0));
  opt.grid.refined_points = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(landscape_scan(
        fixed, [&](const FarmLayout& l) { return sphere_farm(l.coords, so); }, climate, opt));
  }
}
BENCHMARK(BM_Landscape)->Arg(40)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
