#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wavecast/search_space.hpp"
#include "wavecast/trace.hpp"

namespace wavecast {

struct Budget {
  std::size_t max_evaluations = 100;
  /// 0 disables the wall-clock limit.
  double wall_seconds = 0.0;
};

enum class DecayOrientation {
  /// lambda starts at +lambda0 and grows by r_d on success: sigma shrinks.
  contracting,
  /// lambda starts at -lambda0 and falls by r_d on success: sigma grows.
  as_printed,
};

struct EaConfig {
  double lambda0 = 0.04;
  double r_d = 0.01;
  DecayOrientation orientation = DecayOrientation::contracting;
  /// sigma0 as a fraction of each coordinate's search range.
  double sigma0_fraction = 1.0;
  /// Explicit sigma0 per coordinate (search units); overrides the fraction.
  std::vector<double> sigma0;
  /// Mutate one random coordinate when the coin flips pick none.
  bool force_mutation = true;
};

/// (1+1)-EA state. mu is in natural units, sigma in search units.
struct EaState {
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<double> sigma0;
  double lambda = 0.0;
  double r_d = 0.0;
  std::size_t t = 0;
  double best_score = 0.0;

  static EaState start(const SearchSpace& space, std::span<const double> mu, double score,
                       const EaConfig& config);
};

struct EaResult {
  std::vector<double> best;
  double best_score = 0.0;
  EaState state;
  Trace trace;
  std::size_t evaluations = 0;
  bool truncated = false;
};

/// Mutates only the coordinates in `active` (all when empty). Each active
/// coordinate flips with probability 2/|active|. Elitist: mu moves only on a
/// strict improvement.
EaResult adaptive_one_plus_one_ea(EaState state, const SearchSpace& space,
                                  const Objective& objective, const Budget& budget,
                                  std::uint64_t seed, std::span<const std::size_t> active = {},
                                  const EaConfig& config = {});

struct GridResult {
  std::vector<double> best;
  double best_score = 0.0;
  Trace trace;
  std::size_t evaluations = 0;
  bool truncated = false;
};

/// Full cartesian product over the grid coordinates in `params`, others held
/// at `base`. Ties keep the first candidate in row-major order.
GridResult grid_stage(const SearchSpace& space, const Objective& objective,
                      std::span<const double> base, std::span<const std::size_t> params,
                      std::size_t max_evaluations = std::numeric_limits<std::size_t>::max());

struct PairingPlan {
  std::vector<std::size_t> grid_group;
  std::vector<std::vector<std::size_t>> ea_groups;

  /// [LR, BS] by grid; then filters and units; then dropouts, AT and L2.
  static PairingPlan hyperparameter_default();
};

struct EgsConfig {
  PairingPlan plan;
  EaConfig ea;
  Budget budget;
  std::uint64_t seed = 0;
};

struct EgsResult {
  std::vector<double> best;
  double best_score = 0.0;
  Trace trace;
  std::size_t evaluations = 0;
  bool truncated = false;
};

/// Evaluates `start`, runs the grid group, then one EA pass per group with
/// the rest frozen. The evaluations left after the grid are split evenly
/// across EA groups (earlier groups take the remainder).
EgsResult egs_optimize(const SearchSpace& space, const Objective& objective,
                       std::span<const double> start, const EgsConfig& config);

}  // namespace wavecast
