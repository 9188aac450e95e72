#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wavecast/egs.hpp"
#include "wavecast/hyperparams.hpp"
#include "wavecast/random_search.hpp"
#include "wavecast/search_space.hpp"

namespace wavecast::testing {

// -sum (h_i - 3)^2 over [0,10]^4.
inline double bowl(std::span<const double> h) {
  double s = 0.0;
  for (double v : h) s += (v - 3.0) * (v - 3.0);
  return -s;
}

inline bool near_three(std::span<const double> h, double tol) {
  return std::all_of(h.begin(), h.end(), [&](double v) { return std::fabs(v - 3.0) <= tol; });
}

struct EaRun {
  EaResult result;
  double start_score = 0.0;
  bool hit = false;
};

inline EaRun ea_bowl_run(std::uint64_t seed, std::size_t budget = 200) {
  const auto space = SearchSpace::box(4, 0.0, 10.0);
  Rng rng(derive_seed(seed, 1));
  const auto mu = space.sample(rng);
  EaConfig cfg;
  cfg.sigma0 = {1.0, 1.0, 1.0, 1.0};
  auto state = EaState::start(space, mu, bowl(mu), cfg);
  EaRun run{adaptive_one_plus_one_ea(std::move(state), space, bowl, Budget{budget, 0.0}, seed, {},
                                     cfg),
            bowl(mu)};
  run.hit = near_three(run.result.best, 1e-2);
  return run;
}

// A deliberately poor configuration: wide early filters, tiny recurrent layers, heavy dropout.
inline std::vector<double> poor_start() {
  return {16, 16, 16, 16, 4, 4, 0.4, 0.4, 512, 1e-2, 4, 1e-2};
}

inline std::vector<double> tabulated_optimum() {
  const auto v = HyperParams{}.to_vector();
  return {v.begin(), v.end()};
}

struct EgsRun {
  EgsResult result;
  bool within_one_percent = false;
};

inline EgsRun egs_synthetic_run(std::uint64_t seed, std::size_t budget = 300) {
  const auto space = SearchSpace::hyperparameters();
  const SeparableQuadratic objective(space, tabulated_optimum());
  EgsConfig cfg;
  cfg.plan = PairingPlan::hyperparameter_default();
  cfg.budget = Budget{budget, 0.0};
  cfg.seed = seed;
  EgsRun run{egs_optimize(space, std::cref(objective), poor_start(), cfg)};
  // Optimum score is exactly 1.
  run.within_one_percent = run.result.best_score >= 0.99;
  return run;
}

inline RandomSearchResult random_bowl_run(std::uint64_t seed, std::size_t budget = 200) {
  return random_search(SearchSpace::box(4, 0.0, 10.0), bowl, Budget{budget, 0.0}, seed);
}

}  // namespace wavecast::testing
