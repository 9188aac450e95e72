#include "wavecast/scaler.hpp"

#include <algorithm>
#include <string>

#include "wavecast/errors.hpp"

namespace wavecast {

namespace {

double to_unit(double x, double lo, double hi) noexcept {
  return hi == lo ? 0.0 : (x - lo) / (hi - lo);
}

double from_unit(double u, double lo, double hi) noexcept {
  return hi == lo ? lo : lo + u * (hi - lo);
}

}  // namespace

std::vector<std::size_t> ScalerState::constant_features() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < feature_min.size(); ++j)
    if (feature_max[j] == feature_min[j]) out.push_back(j);
  return out;
}

std::vector<std::string> ScalerState::warnings() const {
  std::vector<std::string> out;
  for (std::size_t j : constant_features()) {
    out.push_back("feature " + std::to_string(j) + " is constant on the training rows; scaled to 0");
  }
  if (constant_target()) out.emplace_back("target is constant on the training rows; scaled to 0");
  return out;
}

Tensor ScalerState::apply(const Tensor& features) const {
  if (features.rank() != 2 || features.cols() != feature_min.size()) {
    throw ShapeError("scaler fitted on " + std::to_string(feature_min.size()) +
                     " features cannot apply to " + to_string(features.shape()));
  }
  Tensor out(features.shape());
  for (std::size_t r = 0; r < features.rows(); ++r)
    for (std::size_t j = 0; j < features.cols(); ++j)
      out(r, j) = to_unit(features(r, j), feature_min[j], feature_max[j]);
  return out;
}

Tensor ScalerState::invert(const Tensor& scaled) const {
  if (scaled.rank() != 2 || scaled.cols() != feature_min.size()) {
    throw ShapeError("scaler fitted on " + std::to_string(feature_min.size()) +
                     " features cannot invert " + to_string(scaled.shape()));
  }
  Tensor out(scaled.shape());
  for (std::size_t r = 0; r < scaled.rows(); ++r)
    for (std::size_t j = 0; j < scaled.cols(); ++j)
      out(r, j) = from_unit(scaled(r, j), feature_min[j], feature_max[j]);
  return out;
}

double ScalerState::apply_target(double y) const noexcept {
  return to_unit(y, target_min, target_max);
}

double ScalerState::invert_target(double y) const noexcept {
  return from_unit(y, target_min, target_max);
}

ScalerState minmax_fit(const TrainPartition& train) {
  const auto& d = train.data();
  if (d.size() == 0) throw ValidationError("cannot fit a scaler on zero rows");
  ScalerState s;
  const std::size_t f = d.feature_count();
  s.feature_min.assign(f, 0.0);
  s.feature_max.assign(f, 0.0);
  for (std::size_t j = 0; j < f; ++j) {
    s.feature_min[j] = s.feature_max[j] = d.features(0, j);
    for (std::size_t r = 1; r < d.size(); ++r) {
      s.feature_min[j] = std::min(s.feature_min[j], d.features(r, j));
      s.feature_max[j] = std::max(s.feature_max[j], d.features(r, j));
    }
  }
  const auto [lo, hi] = std::minmax_element(d.targets.begin(), d.targets.end());
  s.target_min = *lo;
  s.target_max = *hi;
  return s;
}

RegressionData minmax_apply(const ScalerState& scaler, const RegressionData& data) {
  data.validate();
  RegressionData out{scaler.apply(data.features), data.targets};
  for (double& y : out.targets) y = scaler.apply_target(y);
  return out;
}

}  // namespace wavecast
