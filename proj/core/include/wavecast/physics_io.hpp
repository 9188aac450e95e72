#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "wavecast/farm_power.hpp"
#include "wavecast/landscape.hpp"

namespace wavecast {

/// Columns hs_m, tp_s, beta_rad, occurrence.
std::vector<SeaState> read_climate_csv(const std::filesystem::path& path);
void write_climate_csv(const std::filesystem::path& path, const std::vector<SeaState>& climate);

/// Columns omega, row, col, re, im (0-based row/col).
/// Radiation file: re = added mass, im = radiation damping.
/// Excitation file: col = 0, re/im = complex excitation per unit amplitude.
std::shared_ptr<TabulatedHydro> read_coefficient_csv(const std::filesystem::path& radiation,
                                                     const std::filesystem::path& excitation);
void write_coefficient_csv(const std::filesystem::path& radiation,
                           const std::filesystem::path& excitation, const TabulatedHydro& table);

/// Columns x_m, y_m, power_w, feasible; masked cells have power NA.
std::string landscape_csv(const Landscape& landscape);
void write_landscape_csv(const std::filesystem::path& path, const Landscape& landscape);

}  // namespace wavecast
