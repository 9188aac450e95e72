#include "wavecast/se_block.hpp"

#include "wavecast/activations.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/tensor_ops.hpp"

namespace wavecast {

namespace {

std::size_t bottleneck_width(std::size_t channels, std::size_t ratio) {
  if (ratio < 1) throw DomainError("se_block: reduce ratio must be >= 1");
  if (channels < ratio) {
    throw ShapeError("se_block: " + std::to_string(channels) +
                     " channels is fewer than reduce ratio " + std::to_string(ratio));
  }
  return channels / ratio;
}

}  // namespace

SeBlockParams SeBlockParams::zeros(std::size_t channels, std::size_t reduce_ratio) {
  const std::size_t hidden = bottleneck_width(channels, reduce_ratio);
  return {reduce_ratio, Tensor({channels, hidden}), Tensor({hidden}), Tensor({hidden, channels}),
          Tensor({channels})};
}

SeBlockParams SeBlockParams::glorot(std::size_t channels, std::size_t reduce_ratio,
                                    std::uint64_t seed) {
  SeBlockParams p = zeros(channels, reduce_ratio);
  p.fc1_w = glorot_init(p.fc1_w.shape(), derive_seed(seed, 0));
  p.fc2_w = glorot_init(p.fc2_w.shape(), derive_seed(seed, 1));
  return p;
}

void SeBlockParams::validate() const {
  const std::size_t c = fc2_b.size();
  const std::size_t hidden = bottleneck_width(c, reduce_ratio);
  const bool ok = fc1_w.shape() == Shape{c, hidden} && fc1_b.shape() == Shape{hidden} &&
                  fc2_w.shape() == Shape{hidden, c} && fc2_b.shape() == Shape{c};
  if (!ok) throw ShapeError("se_block: fully connected shapes do not match channel count");
}

namespace {

struct SeForward {
  Tensor squeeze, hidden_pre, excitation, output;
};

SeForward se_forward(const SeBlockParams& p, const Tensor& x) {
  const std::size_t c = p.channels();
  if (x.rank() != 2 || x.cols() != c) {
    throw ShapeError("se_block expects [T," + std::to_string(c) + "], got " +
                     to_string(x.shape()));
  }
  SeForward f;
  f.squeeze = reduce(ReduceOp::mean, x, 0).reshaped({1, c});
  f.hidden_pre = matmul(f.squeeze, p.fc1_w);
  Tensor hidden = f.hidden_pre;
  for (std::size_t j = 0; j < hidden.size(); ++j) {
    f.hidden_pre[j] += p.fc1_b[j];
    hidden[j] = relu(f.hidden_pre[j]);
  }
  Tensor pre = matmul(hidden, p.fc2_w);
  f.excitation = Tensor({c});
  for (std::size_t j = 0; j < c; ++j) f.excitation[j] = sigmoid(pre[j] + p.fc2_b[j]);
  f.output = x;
  for (std::size_t t = 0; t < x.rows(); ++t)
    for (std::size_t j = 0; j < c; ++j) f.output(t, j) *= f.excitation[j];
  return f;
}

}  // namespace

SeBlockResult se_block(const SeBlockParams& p, const Tensor& channels) {
  p.validate();
  SeForward f = se_forward(p, channels);
  return {std::move(f.output), std::move(f.excitation)};
}

SeBlock::SeBlock(std::size_t channels, std::size_t reduce_ratio, std::uint64_t seed)
    : SeBlock(SeBlockParams::glorot(channels, reduce_ratio, seed)) {}

SeBlock::SeBlock(SeBlockParams params) : params_(std::move(params)) {
  params_.validate();
  grads_ = SeBlockParams::zeros(params_.channels(), params_.reduce_ratio);
}

Shape SeBlock::output_shape(const Shape& input) const {
  if (input.size() != 2 || input[1] != params_.channels()) {
    throw ShapeError("se_block expects [T," + std::to_string(params_.channels()) + "], got " +
                     to_string(input));
  }
  return input;
}

Tensor SeBlock::forward(const Tensor& input, Mode) {
  SeForward f = se_forward(params_, input);
  input_ = input;
  squeeze_ = std::move(f.squeeze);
  hidden_pre_ = std::move(f.hidden_pre);
  excitation_ = std::move(f.excitation);
  return f.output;
}

Tensor SeBlock::backward(const Tensor& grad_output) {
  const std::size_t steps = input_.rows(), c = params_.channels();
  const std::size_t hidden = hidden_pre_.size();
  Tensor grad_input(input_.shape());
  Tensor grad_pre({1, c});
  for (std::size_t j = 0; j < c; ++j) {
    double de = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
      grad_input(t, j) = grad_output(t, j) * excitation_[j];
      de += grad_output(t, j) * input_(t, j);
    }
    grad_pre[j] = de * excitation_[j] * (1.0 - excitation_[j]);
    grads_.fc2_b[j] += grad_pre[j];
  }
  Tensor activated({1, hidden});
  for (std::size_t k = 0; k < hidden; ++k) activated[k] = relu(hidden_pre_[k]);
  axpy(1.0, matmul_tn(activated, grad_pre), grads_.fc2_w);
  Tensor grad_hidden = matmul_nt(grad_pre, params_.fc2_w);
  for (std::size_t k = 0; k < hidden; ++k) {
    if (hidden_pre_[k] <= 0.0) grad_hidden[k] = 0.0;
    grads_.fc1_b[k] += grad_hidden[k];
  }
  axpy(1.0, matmul_tn(squeeze_, grad_hidden), grads_.fc1_w);
  Tensor grad_squeeze = matmul_nt(grad_hidden, params_.fc1_w);
  const double inv_steps = 1.0 / static_cast<double>(steps);
  for (std::size_t t = 0; t < steps; ++t)
    for (std::size_t j = 0; j < c; ++j) grad_input(t, j) += grad_squeeze[j] * inv_steps;
  return grad_input;
}

std::vector<ParamRef> SeBlock::parameters() {
  return {{"fc1_w", &params_.fc1_w, &grads_.fc1_w, true},
          {"fc1_b", &params_.fc1_b, &grads_.fc1_b, false},
          {"fc2_w", &params_.fc2_w, &grads_.fc2_w, true},
          {"fc2_b", &params_.fc2_b, &grads_.fc2_b, false}};
}

}  // namespace wavecast
