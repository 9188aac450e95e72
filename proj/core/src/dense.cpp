#include "wavecast/dense.hpp"

#include "wavecast/errors.hpp"
#include "wavecast/tensor_ops.hpp"

namespace wavecast {

Dense::Dense(std::size_t in_features, std::size_t out_features, std::uint64_t seed)
    : Dense(glorot_init({in_features, out_features}, seed), Tensor({out_features})) {}

Dense::Dense(Tensor weight, Tensor bias)
    : weight_(std::move(weight)),
      bias_(std::move(bias)),
      weight_grad_(weight_.shape()),
      bias_grad_(bias_.shape()) {
  if (weight_.rank() != 2 || bias_.rank() != 1 || bias_.size() != weight_.cols()) {
    throw ShapeError("dense: weight " + to_string(weight_.shape()) + " and bias " +
                     to_string(bias_.shape()) + " disagree");
  }
}

Shape Dense::output_shape(const Shape& input) const {
  if (input.size() != 2 || input[1] != weight_.rows()) {
    throw ShapeError("dense expects [R," + std::to_string(weight_.rows()) + "], got " +
                     to_string(input));
  }
  return {input[0], weight_.cols()};
}

Tensor Dense::forward(const Tensor& input, Mode) {
  output_shape(input.shape());
  input_ = input;
  Tensor out = matmul(input, weight_);
  const std::size_t n = out.cols();
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t j = 0; j < n; ++j) out(r, j) += bias_[j];
  return out;
}

Tensor Dense::backward(const Tensor& grad_output) {
  axpy(1.0, matmul_tn(input_, grad_output), weight_grad_);
  for (std::size_t r = 0; r < grad_output.rows(); ++r)
    for (std::size_t j = 0; j < grad_output.cols(); ++j) bias_grad_[j] += grad_output(r, j);
  return matmul_nt(grad_output, weight_);
}

std::vector<ParamRef> Dense::parameters() {
  return {{"W", &weight_, &weight_grad_, true}, {"b", &bias_, &bias_grad_, false}};
}

}  // namespace wavecast
