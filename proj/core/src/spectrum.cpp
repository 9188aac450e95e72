#include "wavecast/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "wavecast/errors.hpp"

namespace wavecast {

double bretschneider(double hs, double tp, double omega) {
  if (!(hs > 0.0) || !(tp > 0.0)) throw DomainError("Bretschneider needs hs > 0 and tp > 0");
  if (!(omega > 0.0)) throw DomainError("Bretschneider needs omega > 0");
  const double wp = 2.0 * std::numbers::pi / tp;
  const double r4 = std::pow(wp / omega, 4);
  return 5.0 / 16.0 * hs * hs * r4 / omega * std::exp(-1.25 * r4);
}

double bretschneider_m0(double hs) noexcept { return hs * hs / 16.0; }

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log grid needs 0 < lo < hi");
  if (n < 2) throw DomainError("log grid needs at least 2 points");
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("trapezoid: x and y lengths differ");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

}  // namespace wavecast
