#pragma once

#include <vector>

#include "wavecast/layer.hpp"

namespace wavecast {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Adds l2 * ||W||^2 to the loss for parameters flagged as weights.
  double l2 = 0.0;
};

class Adam {
 public:
  Adam(std::vector<ParamRef> params, AdamConfig config);

  /// Applies one update from the accumulated gradients.
  void step();
  std::size_t steps() const noexcept { return t_; }

 private:
  std::vector<ParamRef> params_;
  AdamConfig config_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  std::size_t t_ = 0;
};

/// l2 * sum of squared weights (biases excluded).
double l2_penalty(const std::vector<ParamRef>& params, double l2);

}  // namespace wavecast
