#pragma once

#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace wavecast {

struct NelderMeadOptions {
  /// Initial edge length a.
  double edge = 1.0;
  double eps = 1e-10;
  std::size_t max_iter = 2000;
  /// No iteration starts unless n + 2 evaluations remain.
  std::size_t max_evaluations = std::numeric_limits<std::size_t>::max();
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x_best;
  double f_best = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  /// Final value of the stopping statistic.
  double spread = 0.0;
};

/// Offsets of the regular initial simplex: p along e_i, q along every other axis.
std::pair<double, double> simplex_offsets(std::size_t n, double edge);
/// n+1 vertices; vertex 0 is x0.
std::vector<std::vector<double>> initial_simplex(std::span<const double> x0, double edge);
/// sqrt(sum (f_i - mean f)^2 / n) over the n+1 vertex values.
double simplex_spread(std::span<const double> f);

using MinObjective = std::function<double(std::span<const double>)>;

/// Minimises `f`. Throws NumericalAbort naming the vertex on a non-finite value.
NelderMeadResult nelder_mead(const MinObjective& f, std::span<const double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace wavecast
