#include "wavecast/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wavecast/errors.hpp"

namespace wavecast {

namespace {

using std::numbers::pi;
using cd = std::complex<double>;

std::string omega_text(double omega) { return std::to_string(omega) + " rad/s"; }

void require_square(const RMatrix& m, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n) {
    throw ValidationError(std::string(what) + " must be " + std::to_string(n) + "x" +
                          std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

bool is_block_diagonal(const Eigen::MatrixXcd& s) {
  const Eigen::Index b = static_cast<Eigen::Index>(kModesPerBody);
  for (Eigen::Index c = 0; c < s.cols(); ++c)
    for (Eigen::Index r = 0; r < s.rows(); ++r)
      if (r / b != c / b && s(r, c) != cd(0.0, 0.0)) return false;
  return true;
}

}  // namespace

void FarmState::validate() const {
  if (!hydro) throw ValidationError("farm has no hydrodynamic provider");
  const std::size_t n = dofs();
  if (n == 0) throw ValidationError("farm has no bodies");
  require_square(mass, n, "mass matrix");
  require_square(k_pto, n, "PTO stiffness");
  require_square(b_pto, n, "PTO damping");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
      if (i == j && !(mass(r, c) > 0.0)) throw ValidationError("mass matrix needs a positive diagonal");
      if (i != j && mass(r, c) != 0.0) throw ValidationError("mass matrix must be diagonal");
      if (std::abs(b_pto(r, c) - b_pto(c, r)) > 1e-12 * (1.0 + std::abs(b_pto(r, c)))) {
        throw ValidationError("PTO damping must be symmetric");
      }
    }
  }
}

Eigen::MatrixXcd FarmState::system_matrix(double omega) const {
  const RMatrix inertia = mass + hydro->added_mass(omega);
  const RMatrix damping = hydro->radiation_damping(omega) + b_pto;
  Eigen::MatrixXcd s(inertia.rows(), inertia.cols());
  s.real() = -omega * omega * inertia + k_pto;
  s.imag() = omega * damping;
  return s;
}

namespace {

MotionSolution solve(const FarmState& fs, double omega, double beta, bool allow_blocks) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be positive");
  const Eigen::MatrixXcd s = fs.system_matrix(omega);
  const CVector f = fs.hydro->excitation(omega, beta);
  if (f.size() != s.rows()) throw ShapeError("excitation size does not match the system");
  if (!s.allFinite() || !f.allFinite()) {
    throw DomainError("non-finite coefficients at omega = " + omega_text(omega));
  }

  MotionSolution out;
  out.x = CVector::Zero(f.size());
  if (allow_blocks && is_block_diagonal(s)) {
    out.used_blocks = true;
    out.rcond = 1.0;
    const Eigen::Index b = static_cast<Eigen::Index>(kModesPerBody);
    for (Eigen::Index k = 0; k < s.rows(); k += b) {
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s.block(k, k, b, b));
      out.rcond = std::min(out.rcond, lu.rcond());
      out.x.segment(k, b) = lu.solve(f.segment(k, b));
    }
  } else {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s);
    out.rcond = lu.rcond();
    out.x = lu.solve(f);
  }
  if (!(out.rcond >= kMinRcond) || !out.x.allFinite()) {
    throw DomainError("motion system is singular or ill-conditioned at omega = " +
                      omega_text(omega) + " (rcond " + std::to_string(out.rcond) + ")");
  }
  const double fn = f.norm();
  out.relative_residual = fn > 0.0 ? (s * out.x - f).norm() / fn : (s * out.x).norm();
  return out;
}

}  // namespace

MotionSolution solve_motion(const FarmState& fs, double omega, double beta) {
  return solve(fs, omega, beta, true);
}

MotionSolution solve_motion_dense(const FarmState& fs, double omega, double beta) {
  return solve(fs, omega, beta, false);
}

double SphereOptions::displaced_mass() const {
  return density * 4.0 / 3.0 * pi * radius * radius * radius;
}

double interaction_kernel(double distance) {
  const double x = distance / 20.0;
  return 1.0 + 0.1 * (x == 0.0 ? 1.0 : std::sin(x) / x);
}

SphereArray::SphereArray(std::vector<std::pair<double, double>> positions, SphereOptions options)
    : positions_(std::move(positions)), options_(options), factors_(positions_.size(), 1.0) {
  if (positions_.empty()) throw ValidationError("sphere array needs at least one body");
  if (!(options_.radius > 0.0) || !(options_.density > 0.0) || !(options_.gravity > 0.0) ||
      !(options_.submergence >= 0.0)) {
    throw ValidationError("sphere radius, density and gravity must be positive");
  }
  if (!options_.interaction) return;
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < positions_.size(); ++j) {
      if (i == j) continue;
      const double d = std::hypot(positions_[i].first - positions_[j].first,
                                  positions_[i].second - positions_[j].second);
      prod *= interaction_kernel(d);
    }
    factors_[i] = std::sqrt(prod);
  }
}

std::pair<double, double> SphereArray::excitation_magnitude(double omega) const {
  // Deep-water inertia force on a small submerged sphere: (rho V + a) times
  // the particle acceleration, equal in the horizontal and vertical modes.
  const double k = omega * omega / options_.gravity;
  const double f = 1.5 * options_.displaced_mass() * options_.gravity * k *
                   std::exp(-k * options_.submergence);
  return {f, f};
}

RMatrix SphereArray::added_mass(double) const {
  const auto n = static_cast<Eigen::Index>(kModesPerBody * bodies());
  return RMatrix::Identity(n, n) * (0.5 * options_.displaced_mass());
}

RMatrix SphereArray::radiation_damping(double omega) const {
  const auto n = static_cast<Eigen::Index>(kModesPerBody * bodies());
  const auto [surge, heave] = excitation_magnitude(omega);
  const double rho_g2 = options_.density * options_.gravity * options_.gravity;
  const double k = omega * omega / options_.gravity;
  RMatrix b = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; i += 3) {
    b(i, i) = b(i + 1, i + 1) = omega * k * surge * surge / (4.0 * rho_g2);
    b(i + 2, i + 2) = omega * k * heave * heave / (2.0 * rho_g2);
  }
  return b;
}

CVector SphereArray::excitation(double omega, double beta) const {
  const auto [surge, heave] = excitation_magnitude(omega);
  const double k = omega * omega / options_.gravity;
  CVector f(static_cast<Eigen::Index>(kModesPerBody * bodies()));
  for (std::size_t b = 0; b < bodies(); ++b) {
    const auto [x, y] = positions_[b];
    const cd phase = std::polar(factors_[b], -k * (x * std::cos(beta) + y * std::sin(beta)));
    const auto i = static_cast<Eigen::Index>(kModesPerBody * b);
    f(i) = phase * cd(0.0, surge * std::cos(beta));
    f(i + 1) = phase * cd(0.0, surge * std::sin(beta));
    f(i + 2) = phase * heave;
  }
  return f;
}

FarmState sphere_farm(const std::vector<std::pair<double, double>>& positions,
                      const SphereOptions& options) {
  auto hydro = std::make_shared<SphereArray>(positions, options);
  const auto n = static_cast<Eigen::Index>(hydro->bodies() * kModesPerBody);
  const double m = options.displaced_mass();
  const double inertia = 1.5 * m;
  const double wn = options.pto_natural_frequency;
  FarmState fs;
  fs.mass = RMatrix::Identity(n, n) * m;
  fs.k_pto = RMatrix::Identity(n, n) * (inertia * wn * wn);
  fs.b_pto = RMatrix::Identity(n, n) * (2.0 * options.pto_damping_ratio * wn * inertia);
  fs.hydro = std::move(hydro);
  return fs;
}

TabulatedHydro::TabulatedHydro(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("coefficient table is empty");
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.omega < b.omega; });
  dofs_ = static_cast<std::size_t>(entries_.front().excitation.size());
  if (dofs_ == 0 || dofs_ % kModesPerBody != 0) {
    throw ValidationError("coefficient table needs a multiple of 3 degrees of freedom, got " +
                          std::to_string(dofs_));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (i > 0 && e.omega == entries_[i - 1].omega) {
      throw ValidationError("duplicate frequency " + std::to_string(e.omega) + " in table");
    }
    require_square(e.added_mass, dofs_, "added mass");
    require_square(e.damping, dofs_, "radiation damping");
    if (static_cast<std::size_t>(e.excitation.size()) != dofs_) {
      throw ValidationError("excitation at omega " + std::to_string(e.omega) + " has wrong size");
    }
  }
}

std::pair<std::size_t, double> TabulatedHydro::locate(double omega) const {
  if (omega <= entries_.front().omega) return {0, 0.0};
  if (omega >= entries_.back().omega) return {entries_.size() - 1, 0.0};
  const auto it = std::upper_bound(entries_.begin(), entries_.end(), omega,
                                   [](double w, const Entry& e) { return w < e.omega; });
  const std::size_t hi = static_cast<std::size_t>(it - entries_.begin());
  const double t = (omega - entries_[hi - 1].omega) / (entries_[hi].omega - entries_[hi - 1].omega);
  return {hi - 1, t};
}

RMatrix TabulatedHydro::added_mass(double omega) const {
  const auto [i, t] = locate(omega);
  if (t == 0.0) return entries_[i].added_mass;
  return (1.0 - t) * entries_[i].added_mass + t * entries_[i + 1].added_mass;
}

RMatrix TabulatedHydro::radiation_damping(double omega) const {
  const auto [i, t] = locate(omega);
  if (t == 0.0) return entries_[i].damping;
  return (1.0 - t) * entries_[i].damping + t * entries_[i + 1].damping;
}

CVector TabulatedHydro::excitation(double omega, double) const {
  const auto [i, t] = locate(omega);
  if (t == 0.0) return entries_[i].excitation;
  return (1.0 - t) * entries_[i].excitation + t * entries_[i + 1].excitation;
}

}  // namespace wavecast
