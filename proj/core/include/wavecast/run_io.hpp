#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wavecast/config.hpp"
#include "wavecast/cross_validation.hpp"

namespace wavecast {

inline constexpr int kRunSchemaVersion = 1;

struct FoldArtifact {
  std::size_t fold = 0;
  std::vector<std::string> param_names;
  std::vector<Tensor> params;
  ScalerState scaler;
  std::vector<double> loss_trace;
  std::vector<double> monitor_trace;
  EvalReport report;
};

struct RunArtifacts {
  ExperimentConfig config;
  SequenceLayout layout;
  std::vector<FoldArtifact> folds;
  double wall_seconds = 0.0;
};

RunArtifacts make_artifacts(const ExperimentConfig& config,
                            const std::vector<FoldOutcome>& outcomes, double wall_seconds,
                            const SequenceLayout& layout = {});

/// Layout under `dir`:
///   manifest.txt  config.txt  reports.csv  run_info.txt
///   fold_XX/{params.txt, scaler.txt, loss_trace.csv}
void save_run(const std::filesystem::path& dir, const RunArtifacts& run);
/// Throws SchemaError on a schema version mismatch or inconsistent files.
RunArtifacts load_run(const std::filesystem::path& dir);

/// Rebuilds the model of one fold. When `expected_input_dim` is given and
/// differs from the stored layout a SchemaError is thrown.
Model restore_model(const RunArtifacts& run, std::size_t fold,
                    std::optional<std::size_t> expected_input_dim = std::nullopt);

}  // namespace wavecast
