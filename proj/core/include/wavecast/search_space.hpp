#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavecast/rng.hpp"

namespace wavecast {

/// One tunable coordinate.
///
/// Grid domains move in log2 space when every grid value is positive (linear
/// otherwise) and snap to the nearest grid point. Continuous domains are
/// clamped into [lo, hi] and move in log10 or linear space.
class Domain {
 public:
  static Domain grid(std::string name, std::vector<double> values);
  static Domain continuous(std::string name, double lo, double hi, bool log_scale = false);

  const std::string& name() const noexcept { return name_; }
  bool is_grid() const noexcept { return !grid_.empty(); }
  bool log_scale() const noexcept { return log_; }
  const std::vector<double>& values() const noexcept { return grid_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  bool contains(double v) const noexcept;
  /// Nearest admissible value (nearest grid point measured in search space).
  double project(double v) const;

  /// Coordinates in which mutation steps are taken.
  double to_search(double v) const;
  double from_search(double s) const;
  double search_lo() const { return to_search(lo_); }
  double search_hi() const { return to_search(hi_); }
  double search_range() const { return search_hi() - search_lo(); }

  /// Uniform over grid points, or uniform in search space.
  double sample(Rng& rng) const;

 private:
  std::string name_;
  std::vector<double> grid_;  // sorted, unique
  double lo_ = 0.0;
  double hi_ = 0.0;
  bool log_ = false;
};

class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<Domain> domains);

  std::size_t size() const noexcept { return domains_.size(); }
  const Domain& operator[](std::size_t i) const { return domains_.at(i); }
  const std::vector<Domain>& domains() const noexcept { return domains_; }
  std::optional<std::size_t> index_of(std::string_view name) const noexcept;
  std::vector<std::string> names() const;
  bool all_continuous() const noexcept;

  std::vector<double> project(std::span<const double> point) const;
  bool contains(std::span<const double> point) const;
  std::vector<double> sample(Rng& rng) const;

  /// The 12 model hyperparameters in HyperParams::to_vector() order.
  static SearchSpace hyperparameters();
  /// n continuous linear coordinates named x1..xn on [lo, hi].
  static SearchSpace box(std::size_t n, double lo, double hi);

 private:
  std::vector<Domain> domains_;
};

/// Maximised objective over a point of a SearchSpace.
using Objective = std::function<double(std::span<const double>)>;

/// 1 - mean_i ((s_i - s*_i) / range_i)^2 in search coordinates; optimum 1 at
/// `target`. Separable, so each coordinate can be tuned independently.
class SeparableQuadratic {
 public:
  SeparableQuadratic(SearchSpace space, std::vector<double> target);
  double operator()(std::span<const double> point) const;
  const std::vector<double>& target() const noexcept { return target_; }

 private:
  SearchSpace space_;
  std::vector<double> target_;
};

}  // namespace wavecast
