#pragma once

#include <string>
#include <vector>

#include "wavecast/partition.hpp"

namespace wavecast {

/// Per-column min/max for features and target. A constant column maps to 0.
struct ScalerState {
  std::vector<double> feature_min;
  std::vector<double> feature_max;
  double target_min = 0.0;
  double target_max = 1.0;

  std::vector<std::size_t> constant_features() const;
  bool constant_target() const noexcept { return target_max == target_min; }
  /// One message per constant column.
  std::vector<std::string> warnings() const;

  Tensor apply(const Tensor& features) const;
  Tensor invert(const Tensor& scaled) const;
  double apply_target(double y) const noexcept;
  double invert_target(double y) const noexcept;

  friend bool operator==(const ScalerState&, const ScalerState&) = default;
};

ScalerState minmax_fit(const TrainPartition& train);
RegressionData minmax_apply(const ScalerState& scaler, const RegressionData& data);

}  // namespace wavecast
