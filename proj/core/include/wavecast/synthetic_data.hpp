#pragma once

#include <cstdint>
#include <vector>

#include "wavecast/dataset.hpp"
#include "wavecast/landscape.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

/// Small illustrative climate table per site (three states, occurrences sum to 1).
std::vector<SeaState> default_climate(Site site);

/// n buoys uniform in [0, extent]^2 by rejection so every pair keeps the
/// safe distance. Throws ValidationError if placement keeps failing.
FarmLayout random_layout(std::size_t n, Rng& rng, double extent = kFarmExtent,
                         double safe_distance = kSafeDistance);

struct SyntheticOptions {
  std::size_t rows = 200;
  Site site = Site::sydney;
  /// Empty means default_climate(site).
  std::vector<SeaState> climate;
  SphereOptions sphere = [] {
    SphereOptions s;
    s.interaction = true;
    return s;
  }();
  OmegaGrid grid = [] {
    OmegaGrid g;
    g.refined_points = 0;
    return g;
  }();
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// 49-column rows in the published layout: coordinates, per-buoy annual
/// average power from the sphere stand-in, and their sum.
WecDataset generate_dataset(const SyntheticOptions& options);

}  // namespace wavecast
