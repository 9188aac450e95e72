#pragma once

#include <cstdint>
#include <vector>

#include "wavecast/model.hpp"
#include "wavecast/partition.hpp"

namespace wavecast {

struct TrainOptions {
  std::size_t epochs = 100;
  /// Early stopping patience on the monitor loss; 0 disables early stopping.
  std::size_t patience = 10;
};

struct TrainRun {
  std::vector<Tensor> parameters;
  /// Mean mini-batch LOSS per completed epoch.
  std::vector<double> loss_trace;
  /// Monitor-set LOSS per completed epoch (empty without a monitor set).
  std::vector<double> monitor_trace;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::size_t best_epoch = 0;
  bool early_stopped = false;
  std::uint64_t seed = 0;
  int fold = -1;
  double wall_seconds = 0.0;
};

/// LOSS = sum (y - y_hat)^2 / (2N), eval mode.
double regression_loss(Model& model, const RegressionData& data);

/// Mini-batch Adam on LOSS + l2 * ||W||^2. `train` must already be scaled.
/// With a monitor set the best-monitor parameters are restored at the end.
/// Throws NumericalAbort naming the epoch and batch on a non-finite loss.
TrainRun train(Model& model, const TrainPartition& train, const HyperParams& hp,
               const TrainOptions& options, std::uint64_t seed,
               const TestPartition* monitor = nullptr);

}  // namespace wavecast
