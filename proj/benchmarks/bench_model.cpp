#include <benchmark/benchmark.h>

#include "wavecast/model.hpp"
#include "wavecast/optimizer.hpp"
#include "wavecast/rng.hpp"

using namespace wavecast;

namespace {

// One forward/backward pass over a batch of 32 rows plus an Adam step,
// with the tabulated configuration.
void BM_TrainStep(benchmark::State& state) {
  const auto kind = static_cast<ModelKind>(state.range(0));
  const HyperParams hp;
  const SequenceLayout layout;
  Model model = build_model(hp, kind, layout, {}, 1);
  auto params = model.parameters();
  Adam adam(params, {hp.learning_rate, 0.9, 0.999, 1e-8, hp.l2_reg});
  Rng rng(2);
  std::vector<std::vector<double>> rows(32, std::vector<double>(layout.input_dim()));
  for (auto& r : rows)
    for (auto& v : r) v = rng.uniform();
  for (auto _ : state) {
    zero_gradients(params);
    for (const auto& r : rows) model.backward((model.forward(r, Mode::train) - 0.5) / 32.0);
    adam.step();
  }
  state.SetLabel(std::string(model_name(kind)));
  state.SetItemsProcessed(state.iterations() * rows.size());
}
BENCHMARK(BM_TrainStep)
    ->Arg(static_cast<int>(ModelKind::cnn))
    ->Arg(static_cast<int>(ModelKind::lstm))
    ->Arg(static_cast<int>(ModelKind::cnn_bilstm_sa))
    ->Unit(benchmark::kMillisecond);

}  // namespace
