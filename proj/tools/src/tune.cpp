#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>

#include "wavecast/csv.hpp"
#include "wavecast/egs.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/hyperparams.hpp"
#include "wavecast/nelder_mead.hpp"
#include "wavecast/random_search.hpp"
#include "wavecast_tools/commands.hpp"
#include "wavecast_tools/internal.hpp"

namespace wavecast::cli {

std::vector<double> synthetic_tuning_target() {
  const auto v = HyperParams{}.to_vector();
  return {v.begin(), v.end()};
}

std::vector<double> synthetic_tuning_start() {
  HyperParams hp;
  hp.cnf = {16, 16, 16, 16};
  hp.nhu = {4, 4};
  hp.pdo = {0.4, 0.4};
  hp.batch_size = 512;
  hp.learning_rate = 1e-2;
  hp.attention_dim = 4;
  hp.l2_reg = 1e-2;
  const auto v = hp.to_vector();
  return {v.begin(), v.end()};
}

namespace {

struct Outcome {
  std::vector<double> best;
  double score = 0.0;
  Trace trace;
  std::size_t evaluations = 0;
};

Outcome run_nelder_mead(const SearchSpace& space, const Objective& objective,
                        std::span<const double> start, std::size_t budget) {
  // Minimise -score over unit-normalised search coordinates; each point is
  // projected back onto the admissible domain before evaluation.
  const std::size_t n = space.size();
  auto to_point = [&](std::span<const double> u) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Domain& d = space[i];
      const double uc = std::clamp(u[i], 0.0, 1.0);
      x[i] = d.from_search(d.search_lo() + uc * d.search_range());
    }
    return x;
  };
  std::vector<double> u0(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Domain& d = space[i];
    u0[i] = d.search_range() > 0.0 ? (d.to_search(start[i]) - d.search_lo()) / d.search_range() : 0.0;
  }
  Outcome out;
  out.trace.param_names = space.names();
  double best = -std::numeric_limits<double>::infinity();
  auto f = [&](std::span<const double> u) {
    const auto x = to_point(u);
    const double s = objective(x);
    best = std::max(best, s);
    ++out.evaluations;
    out.trace.rows.push_back(TraceRow{out.evaluations, out.evaluations, x, s, best,
                                      std::vector<std::optional<double>>(n)});
    return -s;
  };
  NelderMeadOptions o;
  o.edge = 0.25;
  o.eps = 1e-6;
  o.max_evaluations = budget;
  const auto r = nelder_mead(f, u0, o);
  out.best = to_point(r.x_best);
  out.score = -r.f_best;
  return out;
}

}  // namespace

int cmd_tune(const TuneArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.budget == 0) throw ValidationError("budget must be positive");
    ExperimentConfig cfg;
    cfg.seed = default_seed();
    if (args.config) cfg = read_experiment(*args.config);
    if (args.seed) cfg.seed = *args.seed;
    if (args.jobs) cfg.jobs = *args.jobs;

    const SearchSpace space = SearchSpace::hyperparameters();
    std::vector<double> start;
    Objective objective;
    RegressionData data;
    if (args.objective == "synthetic") {
      start = synthetic_tuning_start();
      objective = SeparableQuadratic(space, synthetic_tuning_target());
    } else if (args.objective == "model") {
      if (!args.config) throw ValidationError("the model objective needs --config");
      if (args.cv_folds < 2) throw ValidationError("tuning needs at least 2 folds");
      data = load_regression(cfg, args.rows, err);
      const auto v = cfg.hp.to_vector();
      start.assign(v.begin(), v.end());
      CvOptions options = cfg.cv_options();
      options.mode = CvMode::kfold_10;
      options.folds = args.cv_folds;
      objective = [&, options](std::span<const double> x) {
        const HyperParams hp = HyperParams::from_vector(x);
        return mean_validation_r2(cross_validate(data, cfg.model, hp, options, cfg.seed));
      };
    } else {
      throw ValidationError("unknown objective '" + args.objective + "' (model, synthetic)");
    }

    Outcome result;
    if (args.optimizer == "egs") {
      EgsConfig ec;
      ec.plan = PairingPlan::hyperparameter_default();
      ec.budget.max_evaluations = args.budget;
      ec.seed = cfg.seed;
      std::size_t grid = 1;
      for (auto i : ec.plan.grid_group) grid *= space[i].values().size();
      if (args.budget < grid + 1) {
        throw ValidationError("budget " + std::to_string(args.budget) +
                              " is below the minimum " + std::to_string(grid + 1) +
                              " for EGS (start point plus the full grid stage)");
      }
      auto r = egs_optimize(space, objective, start, ec);
      result = {r.best, r.best_score, std::move(r.trace), r.evaluations};
    } else if (args.optimizer == "random") {
      auto r = random_search(space, objective, Budget{args.budget, 0.0}, cfg.seed);
      result = {r.best, r.best_score, std::move(r.trace), r.evaluations};
    } else if (args.optimizer == "nm") {
      if (!space.all_continuous() && !args.relax) {
        throw ValidationError(
            "Nelder-Mead needs a continuous space; this one has grid parameters. Pass --relax to "
            "search their continuous coordinates and snap each point to the grid");
      }
      result = run_nelder_mead(space, objective, start, args.budget);
    } else {
      throw ValidationError("unknown optimizer '" + args.optimizer + "' (egs, nm, random)");
    }

    write_text(args.trace, result.trace.to_csv());
    ExperimentConfig best_cfg = cfg;
    best_cfg.hp = HyperParams::from_vector(result.best);
    if (best_cfg.model == ModelKind::cnn_bilstm_sa) best_cfg.model = ModelKind::cnn_bilstm_sa_h;
    write_text(args.best, config_text(best_cfg));
    out << args.optimizer << ": " << result.evaluations << " evaluations, best score "
        << format_number(result.score) << '\n'
        << "trace written to " << args.trace.string() << ", best configuration to "
        << args.best.string() << '\n';
    return kOk;
  });
}

}  // namespace wavecast::cli
