#include "wavecast/conv1d.hpp"

#include "wavecast/activations.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/tensor_ops.hpp"

namespace wavecast {

std::size_t ConvSpec::channels() const {
  if (kernel_width == 0 || weights.rank() != 2 || weights.rows() % kernel_width != 0) {
    throw ShapeError("conv1d: weights " + to_string(weights.shape()) +
                     " are not [kernel_width*channels, filters]");
  }
  return weights.rows() / kernel_width;
}

void ConvSpec::validate() const {
  if (n_filters == 0 || kernel_width == 0 || stride == 0) {
    throw ShapeError("conv1d: filters, kernel width and stride must be positive");
  }
  if (!(alpha > 0.0)) throw DomainError("conv1d: HLU alpha must be positive");
  channels();
  if (weights.cols() != n_filters || biases.rank() != 1 || biases.size() != n_filters) {
    throw ShapeError("conv1d: weights " + to_string(weights.shape()) + " / biases " +
                     to_string(biases.shape()) + " do not match " + std::to_string(n_filters) +
                     " filters");
  }
}

std::size_t ConvSpec::output_length(std::size_t steps) const {
  if (steps < kernel_width) {
    throw ShapeError("conv1d: sequence length " + std::to_string(steps) +
                     " is shorter than kernel width " + std::to_string(kernel_width));
  }
  return (steps - kernel_width) / stride + 1;
}

namespace {

// Pre-activation [T_out, F]. A window of K consecutive rows of a row-major
// [T,d] tensor is contiguous, so each output row is one dot per filter.
Tensor conv_preactivation(const ConvSpec& spec, const Tensor& seq) {
  const std::size_t d = spec.channels();
  if (seq.rank() != 2 || seq.cols() != d) {
    throw ShapeError("conv1d expects [T," + std::to_string(d) + "], got " +
                     to_string(seq.shape()));
  }
  const std::size_t steps_out = spec.output_length(seq.rows());
  const std::size_t window = spec.kernel_width * d;
  const std::size_t filters = spec.n_filters;
  Tensor pre({steps_out, filters});
  for (std::size_t p = 0; p < steps_out; ++p) {
    const double* in = seq.data() + p * spec.stride * d;
    double* out = pre.data() + p * filters;
    for (std::size_t f = 0; f < filters; ++f) out[f] = spec.biases[f];
    for (std::size_t j = 0; j < window; ++j) {
      const double v = in[j];
      if (v == 0.0) continue;
      const double* w = spec.weights.data() + j * filters;
      for (std::size_t f = 0; f < filters; ++f) out[f] += v * w[f];
    }
  }
  return pre;
}

}  // namespace

Tensor conv1d_forward(const ConvSpec& spec, const Tensor& seq) {
  spec.validate();
  Tensor out = conv_preactivation(spec, seq);
  for (double& v : out.values()) v = hlu(v, spec.alpha);
  return out;
}

Conv1d::Conv1d(std::size_t channels, std::size_t n_filters, std::size_t kernel_width,
               std::size_t stride, double alpha, std::uint64_t seed)
    : Conv1d(ConvSpec{n_filters, kernel_width, stride, alpha,
                      glorot_init({kernel_width * channels, n_filters}, seed),
                      Tensor({n_filters})}) {}

Conv1d::Conv1d(ConvSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  weight_grad_ = Tensor(spec_.weights.shape());
  bias_grad_ = Tensor(spec_.biases.shape());
}

Shape Conv1d::output_shape(const Shape& input) const {
  if (input.size() != 2 || input[1] != spec_.channels()) {
    throw ShapeError("conv1d expects [T," + std::to_string(spec_.channels()) + "], got " +
                     to_string(input));
  }
  return {spec_.output_length(input[0]), spec_.n_filters};
}

Tensor Conv1d::forward(const Tensor& input, Mode) {
  input_ = input;
  preactivation_ = conv_preactivation(spec_, input);
  Tensor out = preactivation_;
  for (double& v : out.values()) v = hlu(v, spec_.alpha);
  return out;
}

Tensor Conv1d::backward(const Tensor& grad_output) {
  const std::size_t d = spec_.channels();
  const std::size_t filters = spec_.n_filters;
  const std::size_t window = spec_.kernel_width * d;
  Tensor grad_input(input_.shape());
  std::vector<double> delta(filters);
  for (std::size_t p = 0; p < preactivation_.rows(); ++p) {
    for (std::size_t f = 0; f < filters; ++f) {
      delta[f] = grad_output(p, f) * hlu_derivative(preactivation_(p, f), spec_.alpha);
      bias_grad_[f] += delta[f];
    }
    const double* in = input_.data() + p * spec_.stride * d;
    double* gin = grad_input.data() + p * spec_.stride * d;
    for (std::size_t j = 0; j < window; ++j) {
      const double* w = spec_.weights.data() + j * filters;
      double* gw = weight_grad_.data() + j * filters;
      double acc = 0.0;
      for (std::size_t f = 0; f < filters; ++f) {
        gw[f] += in[j] * delta[f];
        acc += w[f] * delta[f];
      }
      gin[j] += acc;
    }
  }
  return grad_input;
}

std::vector<ParamRef> Conv1d::parameters() {
  return {{"W_c", &spec_.weights, &weight_grad_, true},
          {"b_c", &spec_.biases, &bias_grad_, false}};
}

}  // namespace wavecast
