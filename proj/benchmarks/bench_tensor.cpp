#include <benchmark/benchmark.h>

#include "wavecast/recurrent.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/tensor_ops.hpp"

using namespace wavecast;

namespace {

Tensor filled(const Shape& shape, Rng& rng) {
  Tensor t(shape);
  for (auto& v : t.values()) v = rng.uniform(-1, 1);
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Tensor a = filled({n, n}, rng), b = filled({n, n}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
  state.SetItemsProcessed(state.iterations() * 2 * n * n * n);
}
BENCHMARK(BM_Matmul)->Arg(16)->Arg(64)->Arg(256);

void BM_LstmStep(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto p = LstmParams::glorot(64, h, 3);
  const Tensor x = filled({64}, rng), hp = filled({h}, rng), cp = filled({h}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lstm_cell_step(p, x, hp, cp));
}
BENCHMARK(BM_LstmStep)->Arg(32)->Arg(128);

}  // namespace
