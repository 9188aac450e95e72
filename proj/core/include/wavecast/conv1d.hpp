#pragma once

#include <cstdint>

#include "wavecast/layer.hpp"

namespace wavecast {

struct ConvSpec {
  std::size_t n_filters = 1;
  std::size_t kernel_width = 3;
  std::size_t stride = 1;
  /// HLU negative-branch scale.
  double alpha = 0.1;
  /// [kernel_width * channels, n_filters]; tap-major, channel-minor.
  Tensor weights;
  /// [n_filters]
  Tensor biases;

  std::size_t channels() const;
  void validate() const;
  std::size_t output_length(std::size_t steps) const;
};

/// Valid cross-correlation of `seq` [T,d] with every filter followed by HLU.
Tensor conv1d_forward(const ConvSpec& spec, const Tensor& seq);

class Conv1d final : public Layer {
 public:
  Conv1d(std::size_t channels, std::size_t n_filters, std::size_t kernel_width,
         std::size_t stride, double alpha, std::uint64_t seed);
  explicit Conv1d(ConvSpec spec);

  std::string name() const override { return "conv1d"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

  const ConvSpec& spec() const noexcept { return spec_; }

 private:
  ConvSpec spec_;
  Tensor weight_grad_;
  Tensor bias_grad_;
  Tensor input_;
  Tensor preactivation_;
};

}  // namespace wavecast
