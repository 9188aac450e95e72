#pragma once

#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

#include "wavecast/metrics.hpp"
#include "wavecast/model.hpp"
#include "wavecast/scaler.hpp"
#include "wavecast/training.hpp"

namespace wavecast {

enum class CvMode { holdout_70_30, kfold_10 };

std::string_view cv_mode_name(CvMode mode) noexcept;
std::optional<CvMode> parse_cv_mode(std::string_view name) noexcept;

struct CvOptions {
  CvMode mode = CvMode::kfold_10;
  std::size_t folds = 10;
  TrainOptions train;
  /// Fraction of each training fold held back to drive early stopping.
  double monitor_fraction = 0.1;
  SequenceLayout layout;
  ArchitectureOptions architecture;
  /// Folds evaluated concurrently.
  std::size_t jobs = 1;
};

struct FoldOutcome {
  std::size_t fold = 0;
  EvalReport report;
  TrainRun run;
  ScalerState scaler;
};

/// Scores `model` on raw rows; both sides are compared in scaled target space.
EvalReport evaluate_model(Model& model, const ScalerState& scaler, const RegressionData& raw);

/// Split, scale (train rows only), train and evaluate every fold.
/// Bit-reproducible for a fixed seed regardless of `jobs`.
std::vector<FoldOutcome> cross_validate(const RegressionData& data, ModelKind kind,
                                        const HyperParams& hp, const CvOptions& options,
                                        std::uint64_t seed);

/// Mean validation R^2 across the folds of `options` (missing R^2 counts as 0).
double mean_validation_r2(const std::vector<FoldOutcome>& outcomes);

}  // namespace wavecast
