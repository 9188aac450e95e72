#include "wavecast/sequential.hpp"

#include "wavecast/errors.hpp"

namespace wavecast {

void zero_gradients(const std::vector<ParamRef>& params) {
  for (const auto& p : params) p.grad->fill(0.0);
}

std::size_t count_scalars(const std::vector<ParamRef>& params) {
  std::size_t n = 0;
  for (const auto& p : params) n += p.value->size();
  return n;
}

namespace {

void check_drop_probability(double p_drop) {
  if (!(p_drop >= 0.0 && p_drop < 1.0)) {
    throw DomainError("dropout probability must lie in [0,1), got " + std::to_string(p_drop));
  }
}

Tensor sample_mask(const Shape& shape, double p_drop, Rng& rng) {
  Tensor mask(shape);
  const double keep_scale = 1.0 / (1.0 - p_drop);
  for (double& m : mask.values()) m = rng.uniform() < p_drop ? 0.0 : keep_scale;
  return mask;
}

}  // namespace

Tensor dropout(const Tensor& x, double p_drop, Mode mode, std::uint64_t seed) {
  check_drop_probability(p_drop);
  if (mode == Mode::eval || p_drop == 0.0) return x;
  Rng rng(seed);
  Tensor out = sample_mask(x.shape(), p_drop, rng);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= x[i];
  return out;
}

Dropout::Dropout(double p_drop, std::uint64_t seed) : p_drop_(p_drop), rng_(seed) {
  check_drop_probability(p_drop);
}

Tensor Dropout::forward(const Tensor& input, Mode mode) {
  active_ = mode == Mode::train && p_drop_ > 0.0;
  if (!active_) return input;
  mask_ = sample_mask(input.shape(), p_drop_, rng_);
  Tensor out = input;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask_[i];
  return out;
}

Tensor Dropout::backward(const Tensor& grad_output) {
  if (!active_) return grad_output;
  Tensor grad = grad_output;
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] *= mask_[i];
  return grad;
}

Shape Flatten::output_shape(const Shape& input) const { return {1, element_count(input)}; }

Tensor Flatten::forward(const Tensor& input, Mode) {
  input_shape_ = input.shape();
  return input.reshaped({1, input.size()});
}

Tensor Flatten::backward(const Tensor& grad_output) { return grad_output.reshaped(input_shape_); }

Sequential::Sequential(std::vector<std::unique_ptr<Layer>> layers) : layers_(std::move(layers)) {}

void Sequential::add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

Shape Sequential::output_shape(const Shape& input) const {
  Shape shape = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    try {
      shape = layers_[i]->output_shape(shape);
    } catch (const ShapeError& e) {
      const std::string prev = i == 0 ? "input" : layers_[i - 1]->name();
      throw ShapeError("layer " + std::to_string(i) + " (" + layers_[i]->name() +
                       ") cannot follow " + prev + ": " + e.what());
    }
  }
  return shape;
}

Tensor Sequential::forward(const Tensor& input, Mode mode) {
  Tensor h = input;
  for (auto& layer : layers_) h = layer->forward(h, mode);
  return h;
}

Tensor Sequential::backward(const Tensor& grad_output) {
  Tensor g = grad_output;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
  return g;
}

std::vector<ParamRef> Sequential::parameters() {
  std::vector<ParamRef> refs;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    for (auto& r : layers_[i]->parameters()) {
      r.name = std::to_string(i) + "." + layers_[i]->name() + "." + r.name;
      refs.push_back(r);
    }
  }
  return refs;
}

Tensor stack_layers(const std::vector<Layer*>& layers, const Tensor& seq, Mode mode) {
  Shape shape = seq.shape();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    try {
      shape = layers[i]->output_shape(shape);
    } catch (const ShapeError& e) {
      throw ShapeError("stack: layer " + std::to_string(i) + " (" + layers[i]->name() +
                       ") incompatible with its input: " + e.what());
    }
  }
  Tensor h = seq;
  for (Layer* layer : layers) h = layer->forward(h, mode);
  return h;
}

}  // namespace wavecast
