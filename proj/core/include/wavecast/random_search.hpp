#pragma once

#include <cstdint>

#include "wavecast/egs.hpp"

namespace wavecast {

struct RandomSearchResult {
  std::vector<double> best;
  double best_score = 0.0;
  Trace trace;
  std::size_t evaluations = 0;
  bool truncated = false;
};

/// Independent uniform samples from every domain; keeps the best.
RandomSearchResult random_search(const SearchSpace& space, const Objective& objective,
                                 const Budget& budget, std::uint64_t seed);

}  // namespace wavecast
