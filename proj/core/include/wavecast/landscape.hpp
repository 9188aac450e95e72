#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wavecast/farm_power.hpp"

namespace wavecast {

inline constexpr double kFarmExtent = 566.0;
inline constexpr double kSafeDistance = 50.0;

struct FarmLayout {
  std::vector<std::pair<double, double>> coords;

  /// Coordinates inside [0, extent]^2 and pairwise distances >= safe distance.
  void validate(double extent = kFarmExtent, double safe_distance = kSafeDistance) const;
  /// Distance from (x, y) to the nearest buoy; infinity when empty.
  double clearance(double x, double y) const noexcept;
};

using FarmBuilder = std::function<FarmState(const FarmLayout&)>;

struct LandscapeOptions {
  double step = 10.0;
  double extent = kFarmExtent;
  double safe_distance = kSafeDistance;
  OmegaGrid grid;
  std::size_t jobs = 1;
};

struct LandscapeCell {
  double x = 0.0;
  double y = 0.0;
  bool feasible = false;
  /// Total annual average farm power; unset for masked cells.
  std::optional<double> power;
};

struct Landscape {
  std::vector<double> xs;
  std::vector<double> ys;
  /// Row-major over (y, x).
  std::vector<LandscapeCell> cells;

  const LandscapeCell& at(std::size_t ix, std::size_t iy) const {
    return cells.at(iy * xs.size() + ix);
  }
  /// Feasible cell with the highest power (first in row-major order on ties).
  const LandscapeCell& best() const;
};

/// Grid coordinates 0, step, 2 step, ... <= extent.
std::vector<double> landscape_axis(double extent, double step);

/// Places one more buoy at each grid point and evaluates the total farm
/// power. Cells closer than the safe distance to a fixed buoy are masked.
/// Throws ValidationError when every cell is masked.
Landscape landscape_scan(const FarmLayout& fixed, const FarmBuilder& build,
                         std::span<const SeaState> climate, const LandscapeOptions& options = {});

}  // namespace wavecast
