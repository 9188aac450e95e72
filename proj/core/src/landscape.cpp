#include "wavecast/landscape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "wavecast/errors.hpp"

namespace wavecast {

void FarmLayout::validate(double extent, double safe_distance) const {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto [x, y] = coords[i];
    if (!(x >= 0.0 && x <= extent && y >= 0.0 && y <= extent)) {
      throw ValidationError("buoy " + std::to_string(i + 1) + " lies outside the farm");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::hypot(x - coords[j].first, y - coords[j].second) < safe_distance) {
        throw ValidationError("buoys " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                              " are closer than the safe distance");
      }
    }
  }
}

double FarmLayout::clearance(double x, double y) const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& [bx, by] : coords) d = std::min(d, std::hypot(x - bx, y - by));
  return d;
}

const LandscapeCell& Landscape::best() const {
  const LandscapeCell* best = nullptr;
  for (const auto& c : cells)
    if (c.power && (best == nullptr || *c.power > *best->power)) best = &c;
  if (best == nullptr) throw ValidationError("landscape has no feasible cell");
  return *best;
}

std::vector<double> landscape_axis(double extent, double step) {
  if (!(step > 0.0) || !(extent >= 0.0)) throw ValidationError("landscape step must be positive");
  std::vector<double> axis;
  for (std::size_t i = 0;; ++i) {
    const double v = static_cast<double>(i) * step;
    if (v > extent + 1e-9 * extent) break;
    axis.push_back(v);
  }
  return axis;
}

Landscape landscape_scan(const FarmLayout& fixed, const FarmBuilder& build,
                         std::span<const SeaState> climate, const LandscapeOptions& options) {
  fixed.validate(options.extent, options.safe_distance);
  validate_climate(climate);
  Landscape out;
  out.xs = landscape_axis(options.extent, options.step);
  out.ys = out.xs;
  out.cells.resize(out.xs.size() * out.ys.size());
  std::vector<std::size_t> todo;
  for (std::size_t iy = 0; iy < out.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < out.xs.size(); ++ix) {
      auto& c = out.cells[iy * out.xs.size() + ix];
      c.x = out.xs[ix];
      c.y = out.ys[iy];
      c.feasible = fixed.clearance(c.x, c.y) >= options.safe_distance;
      if (c.feasible) todo.push_back(iy * out.xs.size() + ix);
    }
  }
  if (todo.empty()) throw ValidationError("no landscape cell respects the safe distance");

  auto evaluate = [&](std::size_t k) {
    auto& c = out.cells[todo[k]];
    FarmLayout layout = fixed;
    layout.coords.emplace_back(c.x, c.y);
    const FarmState fs = build(layout);
    c.power = annual_average_power(fs, climate, options.grid).total;
  };

  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, todo.size());
  if (workers == 1) {
    for (std::size_t k = 0; k < todo.size(); ++k) evaluate(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < todo.size(); k = next++) {
          try {
            evaluate(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace wavecast
