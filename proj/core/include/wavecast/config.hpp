#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "wavecast/cross_validation.hpp"
#include "wavecast/dataset.hpp"
#include "wavecast/hyperparams.hpp"
#include "wavecast/model.hpp"

namespace wavecast {

/// Flat `key = value` file; '#' starts a comment. Keys:
///   site, model, data, seed, epochs, patience, cv, folds, jobs, output,
///   order, kernel_width, attention_hops, se_block,
///   and every HyperParams field name (cnf1 ... l2_reg).
struct ExperimentConfig {
  Site site = Site::sydney;
  ModelKind model = ModelKind::cnn_bilstm_sa;
  HyperParams hp;
  std::uint64_t seed = 0;
  std::size_t epochs = 100;
  std::size_t patience = 10;
  CvMode cv = CvMode::kfold_10;
  std::size_t folds = 10;
  std::size_t jobs = 1;
  std::filesystem::path data;
  std::filesystem::path output = "runs";
  CoordinateOrder order = CoordinateOrder::interleaved;
  ArchitectureOptions architecture;

  /// Throws ValidationError. With `check_files` the data file must exist.
  void validate(bool check_files = false) const;
  CvOptions cv_options() const;
};

/// Throws ValidationError naming the line for unknown keys or bad values.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig defaults = {});
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_text(const ExperimentConfig& config);

std::string_view order_name(CoordinateOrder order) noexcept;
std::optional<CoordinateOrder> parse_order(std::string_view name) noexcept;

}  // namespace wavecast
