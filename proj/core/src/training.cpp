#include "wavecast/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wavecast/errors.hpp"
#include "wavecast/optimizer.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

double regression_loss(Model& model, const RegressionData& data) {
  data.validate();
  if (data.size() == 0) throw ValidationError("loss over zero rows");
  double s = 0.0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    const double e = data.targets[r] - model.forward(data.features.row(r), Mode::eval);
    s += e * e;
  }
  return s / (2.0 * static_cast<double>(data.size()));
}

TrainRun train(Model& model, const TrainPartition& train_part, const HyperParams& hp,
               const TrainOptions& options, std::uint64_t seed, const TestPartition* monitor) {
  const auto start = std::chrono::steady_clock::now();
  const RegressionData& data = train_part.data();
  const std::size_t n = data.size();
  if (n == 0) throw ValidationError("training set is empty");
  if (hp.batch_size == 0) throw ValidationError("batch size must be positive");
  if (!(hp.learning_rate >= 0.0)) throw ValidationError("learning rate must be non-negative");
  // Batches larger than the training set collapse to one full batch.
  const std::size_t batch = std::min(hp.batch_size, n);

  auto params = model.parameters();
  Adam adam(params, AdamConfig{hp.learning_rate, 0.9, 0.999, 1e-8, hp.l2_reg});
  Rng order_rng(derive_seed(seed, 0x5eed));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainRun run;
  run.seed = seed;
  run.initial_loss = regression_loss(model, data);
  if (!std::isfinite(run.initial_loss)) {
    throw NumericalAbort("non-finite loss before training (epoch 0, batch 0)");
  }

  double best_monitor = std::numeric_limits<double>::infinity();
  std::vector<Tensor> best_params;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    order_rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t b0 = 0; b0 < n; b0 += batch, ++batches) {
      const std::size_t b1 = std::min(n, b0 + batch);
      const double scale = 1.0 / static_cast<double>(b1 - b0);
      zero_gradients(params);
      double batch_loss = 0.0;
      for (std::size_t i = b0; i < b1; ++i) {
        const std::size_t r = order[i];
        const double y_hat = model.forward(data.features.row(r), Mode::train);
        const double e = y_hat - data.targets[r];
        batch_loss += 0.5 * e * e * scale;
        model.backward(e * scale);
      }
      batch_loss += l2_penalty(params, hp.l2_reg);
      if (!std::isfinite(batch_loss)) {
        throw NumericalAbort("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batches + 1));
      }
      adam.step();
      epoch_loss += batch_loss;
    }
    run.loss_trace.push_back(epoch_loss / static_cast<double>(batches));

    if (monitor != nullptr && monitor->size() > 0) {
      const double m = regression_loss(model, monitor->data());
      if (!std::isfinite(m)) {
        throw NumericalAbort("non-finite monitor loss at epoch " + std::to_string(epoch));
      }
      run.monitor_trace.push_back(m);
      if (m < best_monitor) {
        best_monitor = m;
        best_params = model.snapshot();
        run.best_epoch = epoch;
        since_best = 0;
      } else if (options.patience > 0 && ++since_best >= options.patience) {
        run.early_stopped = true;
        break;
      }
    } else {
      run.best_epoch = epoch;
    }
  }

  if (!best_params.empty()) model.restore(best_params);
  run.parameters = model.snapshot();
  run.final_loss = regression_loss(model, data);
  run.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace wavecast
