#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wavecast {

using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;

/// Three motion modes per body (surge, sway, heave).
inline constexpr std::size_t kModesPerBody = 3;

/// Frequency-dependent hydrodynamic coefficients of an array.
class HydroProvider {
 public:
  virtual ~HydroProvider() = default;
  virtual std::size_t bodies() const = 0;
  /// A(omega), [3N, 3N].
  virtual RMatrix added_mass(double omega) const = 0;
  /// B(omega), [3N, 3N].
  virtual RMatrix radiation_damping(double omega) const = 0;
  /// F_e(omega, beta) for a unit-amplitude incident wave, [3N].
  virtual CVector excitation(double omega, double beta) const = 0;
};

/// Everything needed to assemble
///   (-w^2 (M + A) + i w (B + B_pto) + K_pto) x = F_e.
struct FarmState {
  RMatrix mass;
  RMatrix k_pto;
  RMatrix b_pto;
  std::shared_ptr<const HydroProvider> hydro;

  std::size_t bodies() const { return hydro ? hydro->bodies() : 0; }
  std::size_t dofs() const { return kModesPerBody * bodies(); }
  /// Throws ValidationError on wrong sizes, non-diagonal or non-positive M,
  /// or asymmetric B_pto.
  void validate() const;

  Eigen::MatrixXcd system_matrix(double omega) const;
};

struct MotionSolution {
  CVector x;
  /// ||S x - F|| / ||F|| (0 when F is 0).
  double relative_residual = 0.0;
  /// Reciprocal condition estimate of the system matrix (or worst block).
  double rcond = 0.0;
  bool used_blocks = false;
};

/// Reciprocal condition numbers below this are treated as singular.
inline constexpr double kMinRcond = 1e-12;

/// Solves the motion equations. When the assembled matrix has no coupling
/// between bodies each 3x3 block is solved on its own. Throws DomainError
/// naming omega when the system is singular or ill-conditioned.
MotionSolution solve_motion(const FarmState& fs, double omega, double beta);
/// Same solve without the block shortcut.
MotionSolution solve_motion_dense(const FarmState& fs, double omega, double beta);

/// Constants of the isolated-sphere stand-in.
struct SphereOptions {
  double radius = 5.0;
  double submergence = 2.0;  // depth of the sphere centre below the surface
  double density = 1025.0;
  double gravity = 9.81;
  /// PTO tuning: resonance and damping ratio of each body in every mode.
  double pto_natural_frequency = 0.8;
  double pto_damping_ratio = 0.3;
  /// Scale each body's excitation by sqrt(prod_j q(d_ij)).
  bool interaction = false;

  double displaced_mass() const;
};

/// q(d) = 1 + 0.1 sin(d/20) / (d/20).
double interaction_kernel(double distance);

/// Identical submerged spheres at `positions` with no radiation coupling.
/// Added mass is half the displaced mass; damping follows from the
/// excitation through the deep-water Haskind relation.
class SphereArray final : public HydroProvider {
 public:
  SphereArray(std::vector<std::pair<double, double>> positions, SphereOptions options = {});

  std::size_t bodies() const override { return positions_.size(); }
  RMatrix added_mass(double omega) const override;
  RMatrix radiation_damping(double omega) const override;
  CVector excitation(double omega, double beta) const override;

  const SphereOptions& options() const noexcept { return options_; }
  const std::vector<double>& interaction_factors() const noexcept { return factors_; }

 private:
  /// Surge (= sway) and heave excitation magnitude per unit amplitude.
  std::pair<double, double> excitation_magnitude(double omega) const;

  std::vector<std::pair<double, double>> positions_;
  SphereOptions options_;
  std::vector<double> factors_;
};

/// FarmState for a SphereArray: diagonal mass and PTO tuned per SphereOptions.
FarmState sphere_farm(const std::vector<std::pair<double, double>>& positions,
                      const SphereOptions& options = {});

/// Coefficients tabulated at increasing frequencies, interpolated linearly
/// and held constant outside the table.
class TabulatedHydro final : public HydroProvider {
 public:
  struct Entry {
    double omega;
    RMatrix added_mass;
    RMatrix damping;
    CVector excitation;
  };

  explicit TabulatedHydro(std::vector<Entry> entries);

  std::size_t bodies() const override { return dofs_ / kModesPerBody; }
  RMatrix added_mass(double omega) const override;
  RMatrix radiation_damping(double omega) const override;
  /// The table is for a single heading; beta is ignored.
  CVector excitation(double omega, double beta) const override;

  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::pair<std::size_t, double> locate(double omega) const;

  std::vector<Entry> entries_;
  std::size_t dofs_ = 0;
};

}  // namespace wavecast
