#include "wavecast/farm_power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavecast/errors.hpp"
#include "wavecast/spectrum.hpp"

namespace wavecast {

void SeaState::validate() const {
  if (!(hs > 0.0) || !std::isfinite(hs)) throw ValidationError("sea state needs hs > 0");
  if (!(tp > 0.0) || !std::isfinite(tp)) throw ValidationError("sea state needs tp > 0");
  if (!std::isfinite(beta)) throw ValidationError("sea state heading must be finite");
  if (!(occurrence >= 0.0 && occurrence <= 1.0)) {
    throw ValidationError("sea state occurrence must lie in [0,1]");
  }
}

void validate_climate(std::span<const SeaState> climate) {
  if (climate.empty()) throw ValidationError("climate table is empty");
  double total = 0.0;
  for (const auto& s : climate) {
    s.validate();
    total += s.occurrence;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("climate occurrences sum to " + std::to_string(total) + ", not 1");
  }
}

double hermitian_power(const RMatrix& b_pto, const CVector& x, double omega) {
  const std::complex<double> q = x.dot(b_pto.cast<std::complex<double>>() * x);
  return 0.5 * omega * omega * q.real();
}

std::vector<double> body_power_regular(const FarmState& fs, double omega, double beta) {
  const CVector x = solve_motion(fs, omega, beta).x;
  const CVector bx = fs.b_pto.cast<std::complex<double>>() * x;
  std::vector<double> out(fs.bodies(), 0.0);
  const double w2 = 0.5 * omega * omega;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out[static_cast<std::size_t>(i) / kModesPerBody] += w2 * (std::conj(x(i)) * bx(i)).real();
  return out;
}

double mean_power_regular(const FarmState& fs, double omega, double beta) {
  return hermitian_power(fs.b_pto, solve_motion(fs, omega, beta).x, omega);
}

namespace {

// integral g(w) dw = integral g(e^u) e^u du, trapezoid in u.
template <typename F>
std::vector<double> log_quadrature(const F& integrand_per_body, std::size_t bodies,
                                   const SeaState& sea, double lo, double hi, std::size_t n) {
  const auto w = log_spaced(lo, hi, n);
  std::vector<double> u(n);
  std::vector<std::vector<double>> y(bodies, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = std::log(w[i]);
    const double s = bretschneider(sea.hs, sea.tp, w[i]);
    const auto p = integrand_per_body(w[i]);
    for (std::size_t b = 0; b < bodies; ++b) y[b][i] = 2.0 * s * p[b] * w[i];
  }
  std::vector<double> out(bodies);
  for (std::size_t b = 0; b < bodies; ++b) out[b] = trapezoid(u, y[b]);
  return out;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

IrregularPower irregular_power(const FarmState& fs, const SeaState& sea, const OmegaGrid& grid) {
  sea.validate();
  auto powers = [&](double w) { return body_power_regular(fs, w, sea.beta); };
  IrregularPower out;
  out.per_body = log_quadrature(powers, fs.bodies(), sea, grid.lo, grid.hi, grid.points);
  out.total = sum(out.per_body);
  out.refined_total = out.total;
  if (grid.refined_points > 0) {
    out.refined_total =
        sum(log_quadrature(powers, fs.bodies(), sea, grid.lo, grid.hi, grid.refined_points));
    const double scale = std::max(std::abs(out.refined_total), 1e-300);
    out.refinement_warning = std::abs(out.refined_total - out.total) > grid.tolerance * scale;
  }
  return out;
}

double irregular_power(const std::function<double(double)>& power_at, const SeaState& sea,
                       const OmegaGrid& grid) {
  sea.validate();
  auto one = [&](double w) { return std::vector<double>{power_at(w)}; };
  return log_quadrature(one, 1, sea, grid.lo, grid.hi, grid.points)[0];
}

double annual_average_power(std::span<const double> powers, std::span<const SeaState> climate) {
  if (powers.size() != climate.size()) throw ShapeError("one power per sea state is required");
  validate_climate(climate);
  double s = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) s += powers[i] * climate[i].occurrence;
  return s;
}

FarmPower annual_average_power(const FarmState& fs, std::span<const SeaState> climate,
                               const OmegaGrid& grid) {
  validate_climate(climate);
  FarmPower out;
  out.per_body.assign(fs.bodies(), 0.0);
  for (const auto& sea : climate) {
    const auto p = irregular_power(fs, sea, grid);
    out.refinement_warning = out.refinement_warning || p.refinement_warning;
    for (std::size_t b = 0; b < p.per_body.size(); ++b)
      out.per_body[b] += p.per_body[b] * sea.occurrence;
  }
  out.total = sum(out.per_body);
  return out;
}

}  // namespace wavecast
