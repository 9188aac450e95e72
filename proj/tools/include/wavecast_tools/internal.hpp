#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "wavecast/config.hpp"

namespace wavecast::cli {

Site require_site(const std::string& name);
/// Config with WAVECAST_SEED as the seed default; a relative data path that
/// does not exist from the working directory is tried beside the config.
ExperimentConfig read_experiment(const std::filesystem::path& path);
/// Validated dataset of `cfg`, optionally a seeded subsample of `rows` rows.
RegressionData load_regression(const ExperimentConfig& cfg, std::size_t rows, std::ostream& err);

}  // namespace wavecast::cli
