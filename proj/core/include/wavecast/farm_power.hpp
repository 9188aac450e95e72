#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wavecast/hydro.hpp"

namespace wavecast {

struct SeaState {
  double hs = 1.0;    // m
  double tp = 8.0;    // s
  double beta = 0.0;  // rad
  double occurrence = 1.0;

  void validate() const;
};

/// Each state valid and occurrences summing to 1 within 1e-9.
void validate_climate(std::span<const SeaState> climate);

/// (w^2 / 2) x^H B_pto x per body for a unit-amplitude regular wave.
std::vector<double> body_power_regular(const FarmState& fs, double omega, double beta);
/// Total of `body_power_regular`.
double mean_power_regular(const FarmState& fs, double omega, double beta);
/// (w^2 / 2) x^H B x for a given motion; real for Hermitian B.
double hermitian_power(const RMatrix& b_pto, const CVector& x, double omega);

struct OmegaGrid {
  double lo = 0.1;
  double hi = 6.3;
  std::size_t points = 50;
  /// Second pass used to flag an unconverged integral; 0 disables it.
  std::size_t refined_points = 200;
  double tolerance = 0.01;
};

struct IrregularPower {
  double total = 0.0;
  std::vector<double> per_body;
  /// Total on the refined grid (equal to `total` when refinement is off).
  double refined_total = 0.0;
  bool refinement_warning = false;
};

/// P = 2 * integral S(w) P(w) dw by the trapezoid rule in log(omega).
IrregularPower irregular_power(const FarmState& fs, const SeaState& sea,
                               const OmegaGrid& grid = {});

/// Same quadrature for an arbitrary regular-wave power curve.
double irregular_power(const std::function<double(double)>& power_at, const SeaState& sea,
                       const OmegaGrid& grid = {});

struct FarmPower {
  double total = 0.0;
  std::vector<double> per_body;
  bool refinement_warning = false;
};

/// sum_i P_i O_i over the climate table.
FarmPower annual_average_power(const FarmState& fs, std::span<const SeaState> climate,
                               const OmegaGrid& grid = {});
double annual_average_power(std::span<const double> powers, std::span<const SeaState> climate);

}  // namespace wavecast
