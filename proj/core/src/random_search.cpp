#include "wavecast/random_search.hpp"

#include <chrono>
#include <cmath>

#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

RandomSearchResult random_search(const SearchSpace& space, const Objective& objective,
                                 const Budget& budget, std::uint64_t seed) {
  if (budget.max_evaluations == 0) throw ValidationError("random search needs a positive budget");
  const auto start = std::chrono::steady_clock::now();
  RandomSearchResult res;
  res.trace.param_names = space.names();
  Rng rng(seed);
  while (res.evaluations < budget.max_evaluations) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.evaluations > 0 && budget.wall_seconds > 0.0 && elapsed >= budget.wall_seconds) {
      res.truncated = true;
      break;
    }
    auto x = space.sample(rng);
    const double score = objective(x);
    if (std::isnan(score)) throw NumericalAbort("objective returned NaN");
    ++res.evaluations;
    if (res.evaluations == 1 || score > res.best_score) {
      res.best = x;
      res.best_score = score;
    }
    res.trace.rows.push_back(TraceRow{res.evaluations, res.evaluations, std::move(x), score,
                                      res.best_score,
                                      std::vector<std::optional<double>>(space.size())});
  }
  return res;
}

}  // namespace wavecast
