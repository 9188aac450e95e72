#pragma once

#include <span>
#include <vector>

namespace wavecast {

/// Two-parameter Bretschneider spectrum, omega_p = 2 pi / tp:
///   S(w) = 5/16 hs^2 wp^4 / w^5 exp(-5/4 (wp / w)^4)
double bretschneider(double hs, double tp, double omega);

/// Zeroth moment of the spectrum in closed form, hs^2 / 16.
double bretschneider_m0(double hs) noexcept;

/// n points from lo to hi, equally spaced in log(omega).
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// Trapezoid rule on an arbitrary increasing abscissa.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace wavecast
