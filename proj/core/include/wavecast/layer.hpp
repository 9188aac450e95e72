#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wavecast/tensor.hpp"

namespace wavecast {

enum class Mode { train, eval };

/// Non-owning handle to a trainable tensor and its gradient accumulator.
struct ParamRef {
  std::string name;
  Tensor* value = nullptr;
  Tensor* grad = nullptr;
  /// Weights are L2-regularized; biases are not.
  bool is_weight = true;
};

/// A differentiable sequence-to-sequence map with an explicit backward pass.
///
/// `forward` caches whatever `backward` needs; `backward` must follow the
/// matching `forward` and accumulates (+=) into parameter gradients.
/// Instances are single-threaded.
class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string name() const = 0;
  virtual Shape output_shape(const Shape& input) const = 0;
  virtual Tensor forward(const Tensor& input, Mode mode) = 0;
  virtual Tensor backward(const Tensor& grad_output) = 0;
  virtual std::vector<ParamRef> parameters() { return {}; }
};

void zero_gradients(const std::vector<ParamRef>& params);
std::size_t count_scalars(const std::vector<ParamRef>& params);

}  // namespace wavecast
