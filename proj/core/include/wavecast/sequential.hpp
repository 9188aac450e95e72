#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wavecast/layer.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

/// Inverted dropout: in train mode each element is zeroed with probability
/// `p_drop` and survivors are scaled by 1/(1-p_drop). Eval mode is identity.
Tensor dropout(const Tensor& x, double p_drop, Mode mode, std::uint64_t seed);

class Dropout final : public Layer {
 public:
  Dropout(double p_drop, std::uint64_t seed);

  std::string name() const override { return "dropout"; }
  Shape output_shape(const Shape& input) const override { return input; }
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;

 private:
  double p_drop_;
  Rng rng_;
  Tensor mask_;
  bool active_ = false;
};

/// [T,d] -> [1, T*d].
class Flatten final : public Layer {
 public:
  std::string name() const override { return "flatten"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;

 private:
  Shape input_shape_;
};

/// Ordered composition h_l = layer_l(h_{l-1}).
class Sequential final : public Layer {
 public:
  Sequential() = default;
  explicit Sequential(std::vector<std::unique_ptr<Layer>> layers);

  void add(std::unique_ptr<Layer> layer);
  std::size_t size() const noexcept { return layers_.size(); }
  Layer& at(std::size_t i) { return *layers_.at(i); }

  std::string name() const override { return "sequential"; }
  /// Throws ShapeError naming the first incompatible pair of layers.
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

/// Feeds `seq` through `layers` in order after checking that adjacent widths agree.
Tensor stack_layers(const std::vector<Layer*>& layers, const Tensor& seq, Mode mode = Mode::eval);

}  // namespace wavecast
