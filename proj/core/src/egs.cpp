#include "wavecast/egs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "wavecast/errors.hpp"
#include "wavecast/hyperparams.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(double limit) : limit_(limit), start_(Clock::now()) {}
  bool expired() const {
    return limit_ > 0.0 &&
           std::chrono::duration<double>(Clock::now() - start_).count() >= limit_;
  }
  double remaining() const {
    if (limit_ <= 0.0) return 0.0;
    const double left = limit_ - std::chrono::duration<double>(Clock::now() - start_).count();
    return std::max(left, 1e-9);
  }

 private:
  double limit_;
  Clock::time_point start_;
};

double checked_score(const Objective& f, std::span<const double> x) {
  const double s = f(x);
  if (std::isnan(s)) throw NumericalAbort("objective returned NaN");
  return s;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

EaState EaState::start(const SearchSpace& space, std::span<const double> mu, double score,
                       const EaConfig& config) {
  EaState s;
  s.mu = space.project(mu);
  if (!config.sigma0.empty()) {
    if (config.sigma0.size() != space.size()) throw ShapeError("sigma0 has the wrong size");
    s.sigma0 = config.sigma0;
  } else {
    for (const auto& d : space.domains()) {
      const double range = d.search_range();
      s.sigma0.push_back(config.sigma0_fraction * (range > 0.0 ? range : 1.0));
    }
  }
  for (double v : s.sigma0)
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("sigma0 must be positive");
  s.sigma = s.sigma0;
  s.lambda = config.orientation == DecayOrientation::contracting ? config.lambda0 : -config.lambda0;
  s.r_d = config.r_d;
  s.best_score = score;
  return s;
}

EaResult adaptive_one_plus_one_ea(EaState state, const SearchSpace& space,
                                  const Objective& objective, const Budget& budget,
                                  std::uint64_t seed, std::span<const std::size_t> active_in,
                                  const EaConfig& config) {
  if (state.mu.size() != space.size() || state.sigma.size() != space.size() ||
      state.sigma0.size() != space.size()) {
    throw ShapeError("EA state does not match the search space");
  }
  const std::vector<std::size_t> active =
      active_in.empty() ? all_indices(space.size())
                        : std::vector<std::size_t>(active_in.begin(), active_in.end());
  for (auto i : active)
    if (i >= space.size()) throw ShapeError("active coordinate out of range");

  EaResult res;
  res.trace.param_names = space.names();
  Rng rng(seed);
  Stopwatch clock(budget.wall_seconds);
  const double p_mutate = 2.0 / static_cast<double>(active.size());
  const bool contracting = config.orientation == DecayOrientation::contracting;

  while (res.evaluations < budget.max_evaluations) {
    if (clock.expired()) {
      res.truncated = true;
      break;
    }
    ++state.t;
    std::vector<double> candidate = state.mu;
    bool mutated = false;
    auto mutate = [&](std::size_t i) {
      const Domain& d = space[i];
      candidate[i] = d.from_search(d.to_search(state.mu[i]) + state.sigma[i] * rng.normal(0.0, 1.0));
      mutated = true;
    };
    for (auto i : active)
      if (rng.uniform() <= p_mutate) mutate(i);
    if (!mutated && config.force_mutation) mutate(active[rng.index(active.size())]);
    candidate = space.project(candidate);

    const double score = checked_score(objective, candidate);
    ++res.evaluations;
    if (score > state.best_score) {
      state.mu = candidate;
      state.lambda += contracting ? state.r_d : -state.r_d;
      for (std::size_t i = 0; i < state.sigma.size(); ++i)
        state.sigma[i] = state.sigma0[i] * std::exp(-state.lambda * static_cast<double>(state.t));
      state.best_score = score;
    }

    TraceRow row{state.t, res.evaluations, candidate, score, state.best_score, {}};
    row.sigma.resize(space.size());
    for (auto i : active) row.sigma[i] = state.sigma[i];
    res.trace.rows.push_back(std::move(row));
  }
  res.best = state.mu;
  res.best_score = state.best_score;
  res.state = std::move(state);
  return res;
}

GridResult grid_stage(const SearchSpace& space, const Objective& objective,
                      std::span<const double> base, std::span<const std::size_t> params,
                      std::size_t max_evaluations) {
  if (params.empty()) throw ValidationError("grid stage has no parameters");
  for (auto i : params) {
    if (i >= space.size()) throw ShapeError("grid coordinate out of range");
    if (!space[i].is_grid()) throw ValidationError(space[i].name() + " is not a grid domain");
  }
  GridResult res;
  res.trace.param_names = space.names();
  const std::vector<double> start = space.project(base);
  std::vector<std::size_t> cursor(params.size(), 0);
  bool have_best = false;

  while (true) {
    if (res.evaluations >= max_evaluations) {
      res.truncated = true;
      break;
    }
    std::vector<double> candidate = start;
    for (std::size_t k = 0; k < params.size(); ++k)
      candidate[params[k]] = space[params[k]].values()[cursor[k]];
    const double score = checked_score(objective, candidate);
    ++res.evaluations;
    if (!have_best || score > res.best_score) {
      res.best = candidate;
      res.best_score = score;
      have_best = true;
    }
    res.trace.rows.push_back(TraceRow{res.evaluations, res.evaluations, candidate, score,
                                      res.best_score,
                                      std::vector<std::optional<double>>(space.size())});

    // Odometer over the grid, last coordinate fastest.
    std::size_t k = params.size();
    while (k > 0) {
      --k;
      if (++cursor[k] < space[params[k]].values().size()) break;
      cursor[k] = 0;
      if (k == 0) return res;
    }
  }
  return res;
}

PairingPlan PairingPlan::hyperparameter_default() {
  return PairingPlan{{kLearningRate, kBatchSize},
                     {{kCnf1, kCnf2, kCnf3, kCnf4, kNhu1, kNhu2},
                      {kPdo1, kPdo2, kAttentionDim, kL2Reg}}};
}

EgsResult egs_optimize(const SearchSpace& space, const Objective& objective,
                       std::span<const double> start, const EgsConfig& config) {
  if (config.budget.max_evaluations == 0) throw ValidationError("EGS needs a positive budget");
  Stopwatch clock(config.budget.wall_seconds);
  EgsResult res;
  res.trace.param_names = space.names();

  auto absorb = [&](Trace stage) {
    for (auto& row : stage.rows) {
      row.eval_id = ++res.evaluations;
      res.trace.rows.push_back(std::move(row));
    }
  };

  res.best = space.project(start);
  res.best_score = checked_score(objective, res.best);
  Trace first;
  first.rows.push_back(TraceRow{0, 0, res.best, res.best_score, res.best_score,
                                std::vector<std::optional<double>>(space.size())});
  absorb(std::move(first));

  if (!config.plan.grid_group.empty()) {
    GridResult g = grid_stage(space, objective, res.best, config.plan.grid_group,
                              config.budget.max_evaluations - res.evaluations);
    res.truncated = g.truncated;
    if (g.best_score > res.best_score) {
      res.best = g.best;
      res.best_score = g.best_score;
    }
    const double before = res.trace.rows.back().best_so_far;
    for (auto& row : g.trace.rows) row.best_so_far = std::max(row.best_so_far, before);
    absorb(std::move(g.trace));
  }

  const auto& groups = config.plan.ea_groups;
  const std::size_t remaining = config.budget.max_evaluations - res.evaluations;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (groups[gi].empty()) throw ValidationError("EA group " + std::to_string(gi) + " is empty");
    std::size_t share = remaining / groups.size() + (gi < remaining % groups.size() ? 1 : 0);
    if (clock.expired()) {
      res.truncated = true;
      break;
    }
    EaState state = EaState::start(space, res.best, res.best_score, config.ea);
    EaResult r = adaptive_one_plus_one_ea(std::move(state), space, objective,
                                          Budget{share, clock.remaining()},
                                          derive_seed(config.seed, gi), groups[gi], config.ea);
    res.truncated = res.truncated || r.truncated;
    res.best = r.best;
    res.best_score = r.best_score;
    absorb(std::move(r.trace));
  }
  return res;
}

}  // namespace wavecast
