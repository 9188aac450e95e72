#pragma once

#include <cstdint>

#include "wavecast/layer.hpp"

namespace wavecast {

/// Affine map applied to every row: [R,in] -> [R,out].
class Dense final : public Layer {
 public:
  Dense(std::size_t in_features, std::size_t out_features, std::uint64_t seed);
  Dense(Tensor weight, Tensor bias);

  std::string name() const override { return "dense"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

  const Tensor& weight() const noexcept { return weight_; }
  const Tensor& bias() const noexcept { return bias_; }

 private:
  Tensor weight_;  // [in, out]
  Tensor bias_;    // [out]
  Tensor weight_grad_;
  Tensor bias_grad_;
  Tensor input_;
};

}  // namespace wavecast
