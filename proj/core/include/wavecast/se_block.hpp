#pragma once

#include <cstdint>

#include "wavecast/layer.hpp"

namespace wavecast {

/// Squeeze-and-excitation over the channel axis of a [T,C] sequence.
struct SeBlockParams {
  std::size_t reduce_ratio = 4;
  Tensor fc1_w;  // [C, C/ratio]
  Tensor fc1_b;  // [C/ratio]
  Tensor fc2_w;  // [C/ratio, C]
  Tensor fc2_b;  // [C]

  static SeBlockParams glorot(std::size_t channels, std::size_t reduce_ratio, std::uint64_t seed);
  static SeBlockParams zeros(std::size_t channels, std::size_t reduce_ratio);
  std::size_t channels() const { return fc2_b.size(); }
  void validate() const;
};

struct SeBlockResult {
  Tensor output;      // [T,C]
  Tensor excitation;  // [C], each in (0,1)
};

SeBlockResult se_block(const SeBlockParams& p, const Tensor& channels);

class SeBlock final : public Layer {
 public:
  SeBlock(std::size_t channels, std::size_t reduce_ratio, std::uint64_t seed);
  explicit SeBlock(SeBlockParams params);

  std::string name() const override { return "se_block"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

 private:
  SeBlockParams params_;
  SeBlockParams grads_;
  Tensor input_;
  Tensor squeeze_;
  Tensor hidden_pre_;
  Tensor excitation_;
};

}  // namespace wavecast
