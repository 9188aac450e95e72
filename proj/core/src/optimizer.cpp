#include "wavecast/optimizer.hpp"

#include <cmath>

#include "wavecast/errors.hpp"

namespace wavecast {

Adam::Adam(std::vector<ParamRef> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  if (!(config_.learning_rate >= 0.0) || !(config_.l2 >= 0.0)) {
    throw ValidationError("Adam: learning rate and l2 must be non-negative");
  }
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const auto& p : params_) {
    m_.emplace_back(p.value->shape());
    v_.emplace_back(p.value->shape());
  }
}

void Adam::step() {
  ++t_;
  const double t = static_cast<double>(t_);
  const double c1 = 1.0 - std::pow(config_.beta1, t);
  const double c2 = 1.0 - std::pow(config_.beta2, t);
  for (std::size_t k = 0; k < params_.size(); ++k) {
    auto w = params_[k].value->values();
    auto g = params_[k].grad->values();
    auto m = m_[k].values();
    auto v = v_[k].values();
    const double decay = params_[k].is_weight ? 2.0 * config_.l2 : 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double gi = g[i] + decay * w[i];
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * gi;
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * gi * gi;
      w[i] -= config_.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + config_.epsilon);
    }
  }
}

double l2_penalty(const std::vector<ParamRef>& params, double l2) {
  if (l2 == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& p : params) {
    if (!p.is_weight) continue;
    for (double w : p.value->values()) s += w * w;
  }
  return l2 * s;
}

}  // namespace wavecast
