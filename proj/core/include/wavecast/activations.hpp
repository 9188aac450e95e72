#pragma once

namespace wavecast {

/// Hyperbolic linear unit: x for x > 0, alpha*x/(1-x) otherwise.
double hlu(double x, double alpha) noexcept;
double hlu_derivative(double x, double alpha) noexcept;

inline double relu(double x) noexcept { return x > 0.0 ? x : 0.0; }

}  // namespace wavecast
