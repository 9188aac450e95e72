#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wavecast::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kNumerical = 3,
};

/// Runs `body`, mapping library exceptions to exit codes and printing the
/// message to `err`.
template <typename F>
int guarded(std::ostream& err, F&& body);

struct ValidateArgs {
  std::filesystem::path data;
  std::string site = "Sydney";
  std::size_t max_issues = 50;
};
int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);

struct TrainArgs {
  std::filesystem::path config;
  std::optional<std::filesystem::path> data;
  std::optional<std::filesystem::path> output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> epochs;
  std::optional<std::string> model;
  /// Seeded subsample of this many rows (0 keeps all).
  std::size_t rows = 0;
};
int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err);

struct EvaluateArgs {
  std::filesystem::path run;
  std::filesystem::path data;
  std::optional<std::size_t> fold;
};
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);

struct TuneArgs {
  std::optional<std::filesystem::path> config;
  std::string optimizer = "egs";
  std::string objective = "model";
  std::size_t budget = 100;
  bool relax = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::size_t rows = 0;
  std::size_t cv_folds = 3;
  std::filesystem::path trace = "tune_trace.csv";
  std::filesystem::path best = "best_config.txt";
};
int cmd_tune(const TuneArgs& args, std::ostream& out, std::ostream& err);

struct LandscapeArgs {
  std::filesystem::path layout;
  std::filesystem::path climate;
  double step = 10.0;
  bool interaction = true;
  std::size_t jobs = 1;
  std::optional<std::filesystem::path> output;
};
int cmd_landscape(const LandscapeArgs& args, std::ostream& out, std::ostream& err);

struct CompareArgs {
  std::vector<std::filesystem::path> runs;
  std::optional<std::filesystem::path> output;
};
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err);

struct GenerateArgs {
  std::string site = "Sydney";
  std::size_t rows = 200;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::filesystem::path output;
};
int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);

/// WAVECAST_SEED when set and numeric, else 0.
std::uint64_t default_seed();

}  // namespace wavecast::cli

#include "wavecast_tools/guarded.inl"

namespace wavecast::cli {

/// Optimum of the synthetic tuning objective: the canonical configuration.
std::vector<double> synthetic_tuning_target();
/// Deliberately poor starting configuration for synthetic tuning runs.
std::vector<double> synthetic_tuning_start();

}  // namespace wavecast::cli
