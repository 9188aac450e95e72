#include "wavecast/cross_validation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

std::string_view cv_mode_name(CvMode mode) noexcept {
  return mode == CvMode::holdout_70_30 ? "70-30" : "10-fold";
}

std::optional<CvMode> parse_cv_mode(std::string_view name) noexcept {
  if (name == "70-30" || name == "holdout") return CvMode::holdout_70_30;
  if (name == "10-fold" || name == "kfold") return CvMode::kfold_10;
  return std::nullopt;
}

EvalReport evaluate_model(Model& model, const ScalerState& scaler, const RegressionData& raw) {
  const RegressionData scaled = minmax_apply(scaler, raw);
  const auto y_hat = model.predict(scaled.features);
  return evaluate(scaled.targets, y_hat);
}

namespace {

struct FoldRows {
  std::size_t index;
  SplitIndices rows;
};

FoldOutcome run_fold(const RegressionData& data, const FoldRows& fold, ModelKind kind,
                     const HyperParams& hp, const CvOptions& options, std::uint64_t seed) {
  const std::uint64_t fold_seed = derive_seed(seed, fold.index + 1);
  std::vector<std::size_t> fit_rows = fold.rows.train_rows;
  std::vector<std::size_t> monitor_rows;
  if (options.monitor_fraction > 0.0 && fit_rows.size() >= 10) {
    auto inner = split_indices(fit_rows.size(), 1.0 - options.monitor_fraction,
                               derive_seed(fold_seed, 1));
    std::vector<std::size_t> a, b;
    for (auto i : inner.train_rows) a.push_back(fit_rows[i]);
    for (auto i : inner.test_rows) b.push_back(fit_rows[i]);
    fit_rows = std::move(a);
    monitor_rows = std::move(b);
  }

  const TrainPartition raw_train(data.subset(fit_rows));
  FoldOutcome out;
  out.fold = fold.index;
  out.scaler = minmax_fit(raw_train);
  const TrainPartition train_part(minmax_apply(out.scaler, raw_train.data()));

  Model model(kind, hp, options.layout, options.architecture, derive_seed(fold_seed, 2));
  if (monitor_rows.empty()) {
    out.run = train(model, train_part, hp, options.train, derive_seed(fold_seed, 3));
  } else {
    const TestPartition monitor(minmax_apply(out.scaler, data.subset(monitor_rows)));
    out.run = train(model, train_part, hp, options.train, derive_seed(fold_seed, 3), &monitor);
  }
  out.run.fold = static_cast<int>(fold.index);
  out.report = evaluate_model(model, out.scaler, data.subset(fold.rows.test_rows));
  return out;
}

}  // namespace

std::vector<FoldOutcome> cross_validate(const RegressionData& data, ModelKind kind,
                                        const HyperParams& hp, const CvOptions& options,
                                        std::uint64_t seed) {
  data.validate();
  hp.validate();
  if (data.feature_count() != options.layout.input_dim()) {
    throw ShapeError("data has " + std::to_string(data.feature_count()) +
                     " features, layout expects " + std::to_string(options.layout.input_dim()));
  }
  std::vector<FoldRows> folds;
  if (options.mode == CvMode::holdout_70_30) {
    folds.push_back({0, split_indices(data.size(), 0.7, seed)});
  } else {
    auto k = kfold_indices(data.size(), options.folds, seed);
    for (std::size_t i = 0; i < k.size(); ++i) folds.push_back({i, std::move(k[i])});
  }

  std::vector<FoldOutcome> outcomes(folds.size());
  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, folds.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < folds.size(); ++i)
      outcomes[i] = run_fold(data, folds[i], kind, hp, options, seed);
    return outcomes;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < folds.size(); i = next++) {
        try {
          outcomes[i] = run_fold(data, folds[i], kind, hp, options, seed);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
  return outcomes;
}

double mean_validation_r2(const std::vector<FoldOutcome>& outcomes) {
  if (outcomes.empty()) return 0.0;
  double s = 0.0;
  for (const auto& o : outcomes) s += o.report.r2.value_or(0.0);
  return s / static_cast<double>(outcomes.size());
}

}  // namespace wavecast
