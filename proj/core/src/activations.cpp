#include "wavecast/activations.hpp"

namespace wavecast {

double hlu(double x, double alpha) noexcept {
  return x > 0.0 ? x : alpha * x / (1.0 - x);
}

double hlu_derivative(double x, double alpha) noexcept {
  if (x > 0.0) return 1.0;
  const double d = 1.0 - x;
  return alpha / (d * d);
}

}  // namespace wavecast
