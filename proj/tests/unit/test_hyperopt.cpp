#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "support/hyperopt_suite.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/nelder_mead.hpp"
#include "wavecast/trace.hpp"

using namespace wavecast;
using namespace wavecast::testing;

namespace {

SearchSpace lr_bs_space(std::vector<double> lr, std::vector<double> bs) {
  return SearchSpace({Domain::grid("LR", std::move(lr)), Domain::grid("BS", std::move(bs))});
}

const std::vector<std::size_t> kBoth{0, 1};

}  // namespace

TEST(SearchSpace, DefaultSpaceCoversEveryField) {
  const auto space = SearchSpace::hyperparameters();
  ASSERT_EQ(space.size(), HyperParams::kDimensions);
  for (auto name : HyperParams::field_names()) EXPECT_TRUE(space.index_of(name)) << name;
  const auto& lr = space[kLearningRate].values();
  EXPECT_EQ(lr, (std::vector<double>{1e-5, 1e-4, 1e-3, 1e-2}));
  EXPECT_EQ(space[kBatchSize].values(), (std::vector<double>{32, 64, 128, 256, 512, 1024}));
}

TEST(SearchSpace, TabulatedRowsAreRepresentable) {
  // Tasmania row 4 and the Sydney row share 256/128/64/32, 32/16, 0.05, BS 32, LR 1e-4, AT 32.
  const auto v = HyperParams{}.to_vector();
  EXPECT_TRUE(SearchSpace::hyperparameters().contains(v));
  EXPECT_EQ(SearchSpace::hyperparameters().project(v), std::vector<double>(v.begin(), v.end()));
}

TEST(SearchSpace, ProjectionLandsInsideDomains) {
  const auto space = SearchSpace::hyperparameters();
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> p(space.size());
    for (auto& v : p) v = std::exp(rng.uniform(-15, 8));
    EXPECT_TRUE(space.contains(space.project(p)));
  }
  EXPECT_EQ(space[kCnf1].project(90.0), 64.0);
  EXPECT_EQ(space[kCnf1].project(91.0), 128.0);
}

TEST(GridStage, SingletonGrid) {
  const auto space = lr_bs_space({1e-3}, {32});
  int calls = 0;
  const auto r = grid_stage(space, [&](std::span<const double>) { return ++calls, 0.5; },
                            std::vector<double>{1e-3, 32}, kBoth);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(r.best, (std::vector<double>{1e-3, 32}));
  EXPECT_EQ(r.best_score, 0.5);
}

TEST(GridStage, FindsTableMaximum) {
  const std::vector<double> lrs{1e-2, 1e-3, 1e-4, 1e-5}, bss{32, 64, 128, 256, 512, 1024};
  Rng rng(2);
  std::map<std::pair<double, double>, double> table;
  for (double lr : lrs)
    for (double bs : bss) table[{lr, bs}] = rng.uniform(0.0, 0.9);
  table[{1e-4, 64}] = 0.95;
  std::pair<double, double> argmax{};
  double best = -1;
  for (const auto& [k, v] : table)
    if (v > best) best = v, argmax = k;

  int calls = 0;
  const auto r = grid_stage(
      lr_bs_space(lrs, bss),
      [&](std::span<const double> x) { return ++calls, table.at({x[0], x[1]}); },
      std::vector<double>{1e-2, 32}, kBoth);
  EXPECT_EQ(calls, 24);
  EXPECT_EQ(r.best, (std::vector<double>{argmax.first, argmax.second}));
  EXPECT_EQ(r.best, (std::vector<double>{1e-4, 64}));
  EXPECT_TRUE(r.trace.best_is_monotone());
}

TEST(GridStage, RejectsEmptyOrContinuousGroups) {
  EXPECT_THROW(Domain::grid("LR", {}), ValidationError);
  const auto space = SearchSpace::box(2, 0, 1);
  EXPECT_THROW(grid_stage(space, bowl, std::vector<double>{0, 0}, kBoth), ValidationError);
}

TEST(Ea, ZeroBudgetReturnsStart) {
  const auto space = SearchSpace::box(4, 0, 10);
  const std::vector<double> mu{1, 2, 3, 4};
  int calls = 0;
  auto counted = [&](std::span<const double> x) { return ++calls, bowl(x); };
  const auto r = adaptive_one_plus_one_ea(EaState::start(space, mu, bowl(mu), {}), space, counted,
                                          Budget{0, 0.0}, 1);
  EXPECT_EQ(calls, 0);
  EXPECT_EQ(r.best, mu);
  EXPECT_EQ(r.best_score, bowl(mu));
  EXPECT_TRUE(r.trace.rows.empty());
}

TEST(Ea, ElitismStepSizeAndBudget) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto run = ea_bowl_run(seed);
    const auto& r = run.result;
    EXPECT_EQ(r.evaluations, 200u);
    EXPECT_TRUE(r.trace.best_is_monotone());
    double best_seen = -1e300;
    double last_sigma = 1.0;
    for (const auto& row : r.trace.rows) {
      best_seen = std::max(best_seen, row.score);
      EXPECT_EQ(row.best_so_far, std::max(best_seen, row.best_so_far));
      EXPECT_TRUE(SearchSpace::box(4, 0, 10).contains(row.params));
      ASSERT_TRUE(row.sigma[0]);
      EXPECT_GT(*row.sigma[0], 0.0);
      EXPECT_LE(*row.sigma[0], last_sigma);
      last_sigma = *row.sigma[0];
    }
    EXPECT_GE(r.best_score, best_seen);
  }
}

TEST(Ea, StepSizeFollowsDecaySchedule) {
  const auto space = SearchSpace::box(4, 0, 10);
  const std::vector<double> mu{9, 9, 9, 9};
  EaConfig cfg;
  cfg.sigma0 = {1, 1, 1, 1};
  const auto r = adaptive_one_plus_one_ea(EaState::start(space, mu, bowl(mu), cfg), space, bowl,
                                          Budget{100, 0.0}, 6, {}, cfg);
  // lambda = 0.04 + 0.01 * successes; sigma = exp(-lambda * t) refreshed on each success.
  double best = bowl(mu), sigma = 1.0;
  std::size_t successes = 0;
  for (const auto& row : r.trace.rows) {
    if (row.score > best) {
      best = row.score;
      ++successes;
      sigma = std::exp(-(0.04 + 0.01 * static_cast<double>(successes)) *
                       static_cast<double>(row.iteration));
    }
    EXPECT_NEAR(*row.sigma[0], sigma, 1e-12 * sigma) << "t=" << row.iteration;
  }
  EXPECT_GT(successes, 3u);
}

TEST(Ea, BowlSuccessRateUnderTheSpecifiedSchedule) {
  // sigma = sigma0 * exp(-lambda * t) with lambda rising on every success collapses the
  // step size within ~50 iterations, so 1e-2 of the optimum is out of reach from a random
  // start. Pinned at the measured rate; see the tuning notes in the README.
  std::size_t hits = 0, improved = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto run = ea_bowl_run(seed);
    hits += run.hit;
    improved += run.result.best_score > run.start_score;
  }
  EXPECT_EQ(hits, 0u);
  EXPECT_EQ(improved, 100u);
}

TEST(Ea, GentlerScheduleReachesTheBowlFloor) {
  // With r_d = 0 the schedule is a plain exponential and a useful fraction converges.
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto space = SearchSpace::box(4, 0.0, 10.0);
    Rng rng(derive_seed(seed, 1));
    const auto mu = space.sample(rng);
    EaConfig cfg;
    cfg.sigma0 = {1, 1, 1, 1};
    cfg.r_d = 0.0;
    const auto r = adaptive_one_plus_one_ea(EaState::start(space, mu, bowl(mu), cfg), space,
                                            bowl, Budget{200, 0.0}, seed, {}, cfg);
    hits += near_three(r.best, 1e-2);
  }
  EXPECT_GE(hits, 20u);
}

TEST(Ea, AsPrintedOrientationGrowsSteps) {
  const auto space = SearchSpace::box(4, 0, 10);
  EaConfig cfg;
  cfg.orientation = DecayOrientation::as_printed;
  cfg.sigma0 = {1, 1, 1, 1};
  const std::vector<double> mu{9, 9, 9, 9};
  const auto r = adaptive_one_plus_one_ea(EaState::start(space, mu, bowl(mu), cfg), space, bowl,
                                          Budget{50, 0.0}, 4, {}, cfg);
  EXPECT_LT(r.state.lambda, 0.0);
  EXPECT_GT(r.state.sigma[0], 1.0);
}

TEST(Ea, InactiveCoordinatesStayFrozen) {
  const auto space = SearchSpace::box(4, 0, 10);
  const std::vector<double> mu{5, 5, 5, 5};
  const std::vector<std::size_t> active{1, 3};
  const auto r = adaptive_one_plus_one_ea(EaState::start(space, mu, bowl(mu), {}), space, bowl,
                                          Budget{100, 0.0}, 5, active);
  for (const auto& row : r.trace.rows) {
    EXPECT_EQ(row.params[0], 5.0);
    EXPECT_EQ(row.params[2], 5.0);
  }
}

TEST(Egs, SeparableQuadraticCriterion) {
  // Measured: 20/100 seeds reach score >= 0.99 with budget 300 (see README tuning notes).
  std::size_t good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto run = egs_synthetic_run(seed);
    EXPECT_TRUE(run.result.trace.best_is_monotone());
    EXPECT_LE(run.result.evaluations, 300u);
    EXPECT_GT(run.result.best_score, 0.9);
    good += run.within_one_percent;
  }
  EXPECT_GE(good, 15u);
}

TEST(Egs, GridStageFreezesTheTabulatedLrAndBatch) {
  const auto run = egs_synthetic_run(0);
  EXPECT_EQ(run.result.best[kLearningRate], 1e-4);
  EXPECT_EQ(run.result.best[kBatchSize], 32.0);
  for (const auto& row : run.result.trace.rows) {
    if (row.eval_id > 25) {
      EXPECT_EQ(row.params[kLearningRate], 1e-4);
      EXPECT_EQ(row.params[kBatchSize], 32.0);
    }
  }
}

TEST(Egs, OneGroupPlanIsPlainEa) {
  const auto space = SearchSpace::box(4, 0, 10);
  const std::vector<double> start{8, 1, 7, 2};
  EgsConfig cfg;
  cfg.plan.ea_groups = {{0, 1, 2, 3}};
  cfg.budget = Budget{60, 0.0};
  cfg.seed = 17;
  const auto egs = egs_optimize(space, bowl, start, cfg);

  const auto ea = adaptive_one_plus_one_ea(EaState::start(space, start, bowl(start), cfg.ea),
                                           space, bowl, Budget{59, 0.0}, derive_seed(17, 0),
                                           std::vector<std::size_t>{0, 1, 2, 3}, cfg.ea);
  EXPECT_EQ(egs.best, ea.best);
  EXPECT_EQ(egs.best_score, ea.best_score);
  EXPECT_EQ(egs.evaluations, 60u);
}

TEST(Egs, BudgetNeverExceeded) {
  for (std::size_t budget : {1u, 2u, 25u, 26u, 100u}) {
    std::size_t calls = 0;
    const auto space = SearchSpace::hyperparameters();
    const SeparableQuadratic q(space, tabulated_optimum());
    EgsConfig cfg;
    cfg.plan = PairingPlan::hyperparameter_default();
    cfg.budget = Budget{budget, 0.0};
    const auto r = egs_optimize(
        space, [&](std::span<const double> x) { return ++calls, q(x); }, poor_start(), cfg);
    EXPECT_EQ(calls, r.evaluations);
    EXPECT_LE(calls, budget);
    EXPECT_EQ(r.trace.rows.size(), calls);
  }
}

TEST(NelderMead, SimplexConstants) {
  const auto [p, q] = simplex_offsets(2, 1.0);
  EXPECT_NEAR(p, (std::sqrt(3.0) + 1) / (2 * std::numbers::sqrt2), 1e-12);
  EXPECT_NEAR(q, (std::sqrt(3.0) - 1) / (2 * std::numbers::sqrt2), 1e-12);
  EXPECT_NEAR(p, 0.9659, 1e-4);
  EXPECT_NEAR(q, 0.2588, 1e-4);
  const auto s = initial_simplex(std::vector<double>{0, 0}, 1.0);
  ASSERT_EQ(s.size(), 3u);
  // every edge has the requested length
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      EXPECT_NEAR(std::hypot(s[i][0] - s[j][0], s[i][1] - s[j][1]), 1.0, 1e-12);
}

TEST(NelderMead, SphereFromOneOne) {
  auto sphere = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  NelderMeadOptions opt;
  opt.eps = 1e-10;
  const auto r = nelder_mead(sphere, std::vector<double>{1, 1}, opt);
  EXPECT_LT(r.f_best, 1e-8);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.iterations, opt.max_iter);
  EXPECT_LT(r.spread, opt.eps);
}

TEST(NelderMead, OneDimension) {
  auto f = [](std::span<const double> x) { return (x[0] - 2) * (x[0] - 2); };
  const auto r = nelder_mead(f, std::vector<double>{0.0});
  EXPECT_LT(std::fabs(r.x_best[0] - 2), 1e-4);
  EXPECT_EQ(initial_simplex(std::vector<double>{0.0}, 1.0).size(), 2u);
}

TEST(NelderMead, SpreadStatistic) {
  EXPECT_EQ(simplex_spread(std::vector<double>{3, 3, 3}), 0.0);
  // n = 2 for three vertices: sqrt((1 + 0 + 1) / 2)
  EXPECT_NEAR(simplex_spread(std::vector<double>{1, 2, 3}), 1.0, 1e-15);
}

TEST(NelderMead, NonFiniteVertexAborts) {
  auto f = [](std::span<const double> x) { return x[0] > 0.5 ? std::nan("") : x[0]; };
  try {
    nelder_mead(f, std::vector<double>{0.0});
    FAIL();
  } catch (const NumericalAbort& e) {
    EXPECT_NE(std::string(e.what()).find("vertex"), std::string::npos);
  }
}

TEST(NelderMead, EvaluationCap) {
  std::size_t calls = 0;
  auto f = [&](std::span<const double> x) { return ++calls, x[0] * x[0] + x[1] * x[1]; };
  NelderMeadOptions opt;
  opt.max_evaluations = 20;
  const auto r = nelder_mead(f, std::vector<double>{3, 3}, opt);
  EXPECT_LE(calls, 20u);
  EXPECT_EQ(r.evaluations, calls);
  opt.max_evaluations = 2;
  EXPECT_THROW(nelder_mead(f, std::vector<double>{3, 3}, opt), ValidationError);
}

TEST(RandomSearch, BudgetOneIsTheSample) {
  const auto space = SearchSpace::box(4, 0, 10);
  const auto r = random_bowl_run(8, 1);
  Rng rng(8);
  EXPECT_EQ(r.evaluations, 1u);
  ASSERT_EQ(r.trace.rows.size(), 1u);
  EXPECT_EQ(r.best, r.trace.rows[0].params);
  EXPECT_EQ(r.best_score, bowl(r.best));
  EXPECT_THROW(random_bowl_run(8, 0), ValidationError);
}

TEST(RandomSearch, ReproducibleAndMonotone) {
  const auto a = random_bowl_run(9), b = random_bowl_run(9);
  EXPECT_EQ(a.best, b.best);
  EXPECT_TRUE(a.trace.best_is_monotone());
}

TEST(RandomSearch, BowlRateMatchesBallVolume) {
  // P(one uniform sample lands within radius 2 of (3,3,3,3)) = (pi^2/2 * 2^4) / 10^4.
  const double p = std::numbers::pi * std::numbers::pi / 2 * 16 / 1e4;
  const double expected = 1 - std::pow(1 - p, 200);  // 0.795
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) hits += random_bowl_run(seed).best_score > -4.0;
  const double sd = std::sqrt(expected * (1 - expected) / 1000);
  EXPECT_NEAR(hits / 1000.0, expected, 4 * sd);

  std::size_t first100 = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) first100 += random_bowl_run(seed).best_score > -4.0;
  EXPECT_GE(first100, 70u);
}

TEST(Trace, CsvLayout) {
  const auto r = random_bowl_run(1, 3);
  const std::string csv = r.trace.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "iteration,eval_id,x1,x2,x3,x4,score,best_so_far,sigma_x1,sigma_x2,sigma_x3,sigma_x4");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
