#include "wavecast/attention.hpp"

#include <cmath>

#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/tensor_ops.hpp"

namespace wavecast {

AttentionParams AttentionParams::glorot(std::size_t model_dim, std::size_t attention_dim,
                                        std::size_t hops, std::uint64_t seed) {
  return {glorot_init({attention_dim, model_dim}, derive_seed(seed, 0)),
          glorot_init({hops, attention_dim}, derive_seed(seed, 1))};
}

void AttentionParams::validate() const {
  if (S_k.rank() != 2 || S_a.rank() != 2 || S_a.cols() != S_k.rows()) {
    throw ShapeError("attention: S_k " + to_string(S_k.shape()) + " and S_a " +
                     to_string(S_a.shape()) + " are inconsistent");
  }
}

AttentionResult self_attention(const AttentionParams& p, const Tensor& O) {
  p.validate();
  if (O.rank() != 2 || O.cols() != p.model_dim()) {
    throw ShapeError("attention: S_k " + to_string(p.S_k.shape()) + " cannot project O " +
                     to_string(O.shape()));
  }
  AttentionResult r;
  r.scores = elementwise(ElementwiseOp::tanh, matmul_nt(p.S_k, O));
  r.weights = softmax_rows(matmul(p.S_a, r.scores));
  r.output = matmul(r.weights, O);
  return r;
}

SelfAttention::SelfAttention(std::size_t model_dim, std::size_t attention_dim,
                             std::size_t hops, std::uint64_t seed)
    : SelfAttention(AttentionParams::glorot(model_dim, attention_dim, hops, seed)) {}

SelfAttention::SelfAttention(AttentionParams params) : params_(std::move(params)) {
  params_.validate();
  grad_S_k_ = Tensor(params_.S_k.shape());
  grad_S_a_ = Tensor(params_.S_a.shape());
}

Shape SelfAttention::output_shape(const Shape& input) const {
  if (input.size() != 2 || input[1] != params_.model_dim()) {
    throw ShapeError("attention expects [T," + std::to_string(params_.model_dim()) +
                     "], got " + to_string(input));
  }
  return {params_.hops(), params_.model_dim()};
}

Tensor SelfAttention::forward(const Tensor& input, Mode) {
  input_ = input;
  cache_ = self_attention(params_, input);
  return cache_.output;
}

Tensor SelfAttention::backward(const Tensor& grad_output) {
  const Tensor& A = cache_.weights;
  const Tensor& F = cache_.scores;
  // out = A*O
  Tensor grad_A = matmul_nt(grad_output, input_);
  Tensor grad_input = matmul_tn(A, grad_output);
  // A = softmax(S_a*F)
  Tensor grad_E = softmax_rows_backward(A, grad_A);
  axpy(1.0, matmul_nt(grad_E, F), grad_S_a_);
  Tensor grad_F = matmul_tn(params_.S_a, grad_E);
  // F = tanh(S_k*O^T)
  Tensor grad_pre = elementwise_backward(ElementwiseOp::tanh, F, F, grad_F);
  axpy(1.0, matmul(grad_pre, input_), grad_S_k_);
  axpy(1.0, matmul_tn(grad_pre, params_.S_k), grad_input);
  return grad_input;
}

std::vector<ParamRef> SelfAttention::parameters() {
  return {{"S_k", &params_.S_k, &grad_S_k_, true}, {"S_a", &params_.S_a, &grad_S_a_, true}};
}

}  // namespace wavecast
