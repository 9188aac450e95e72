#pragma once

#include <functional>
#include <string>

#include "wavecast/tensor.hpp"

namespace wavecast {

struct GradCheckConfig {
  double epsilon = 1e-5;
  double rel_tol = 1e-4;
  double abs_tol = 1e-7;
};

struct GradCheckResult {
  bool passed = true;
  std::size_t checked = 0;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  /// Largest |g_a - g_fd| / (rel_tol * max(|g_a|,|g_fd|) + abs_tol); <= 1 passes.
  double worst_ratio = 0.0;

  std::string describe() const;
};

/// Central finite-difference gradient of a scalar function of `x`.
Tensor numeric_gradient(const std::function<double(const Tensor&)>& f, const Tensor& x,
                        double epsilon);

/// Compares `analytic` against central differences of `f` at `x`:
/// |g_a - g_fd| <= rel_tol * max(|g_a|, |g_fd|) + abs_tol elementwise.
GradCheckResult check_gradient(const std::function<double(const Tensor&)>& f,
                               const Tensor& x, const Tensor& analytic,
                               const GradCheckConfig& config = {});

/// Merge results from several checked tensors.
void merge_into(GradCheckResult& total, const GradCheckResult& part);

}  // namespace wavecast
