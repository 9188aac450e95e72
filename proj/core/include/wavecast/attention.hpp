#pragma once

#include <cstdint>

#include "wavecast/layer.hpp"

namespace wavecast {

/// Additive self-attention weights.
///   F = tanh(S_k * O^T)      S_k: [attention_dim, d]
///   A = softmax_rows(S_a * F) S_a: [hops, attention_dim]
///   out = A * O              [hops, d]
struct AttentionParams {
  Tensor S_k;
  Tensor S_a;

  static AttentionParams glorot(std::size_t model_dim, std::size_t attention_dim,
                                std::size_t hops, std::uint64_t seed);
  std::size_t attention_dim() const { return S_k.rows(); }
  std::size_t model_dim() const { return S_k.cols(); }
  std::size_t hops() const { return S_a.rows(); }
  void validate() const;
};

struct AttentionResult {
  Tensor output;   // [hops, d]
  Tensor weights;  // A, [hops, T]
  Tensor scores;   // F, [attention_dim, T]
};

AttentionResult self_attention(const AttentionParams& p, const Tensor& O);

class SelfAttention final : public Layer {
 public:
  SelfAttention(std::size_t model_dim, std::size_t attention_dim, std::size_t hops,
                std::uint64_t seed);
  explicit SelfAttention(AttentionParams params);

  std::string name() const override { return "self_attention"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

  const Tensor& last_weights() const noexcept { return cache_.weights; }

 private:
  AttentionParams params_;
  Tensor grad_S_k_;
  Tensor grad_S_a_;
  Tensor input_;
  AttentionResult cache_;
};

}  // namespace wavecast
