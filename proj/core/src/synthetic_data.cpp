#include "wavecast/synthetic_data.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "wavecast/errors.hpp"

namespace wavecast {

std::vector<SeaState> default_climate(Site site) {
  switch (site) {
    case Site::adelaide: return {{1.2, 8.0, 0.3, 0.3}, {2.0, 10.0, 0.4, 0.5}, {3.0, 12.0, 0.5, 0.2}};
    case Site::perth: return {{1.5, 9.0, 0.1, 0.25}, {2.5, 11.0, 0.2, 0.5}, {3.5, 13.0, 0.3, 0.25}};
    case Site::sydney: return {{1.0, 7.0, 0.6, 0.3}, {1.8, 9.0, 0.8, 0.5}, {2.8, 11.0, 1.0, 0.2}};
    case Site::tasmania: return {{2.0, 10.0, 0.0, 0.2}, {3.0, 12.0, 0.1, 0.5}, {4.5, 14.0, 0.2, 0.3}};
  }
  return {};
}

FarmLayout random_layout(std::size_t n, Rng& rng, double extent, double safe_distance) {
  constexpr std::size_t kAttempts = 100000;
  FarmLayout layout;
  std::size_t attempts = 0;
  while (layout.coords.size() < n) {
    if (++attempts > kAttempts) {
      throw ValidationError("could not place " + std::to_string(n) + " buoys with " +
                            std::to_string(safe_distance) + " m spacing");
    }
    const double x = rng.uniform(0.0, extent);
    const double y = rng.uniform(0.0, extent);
    if (layout.clearance(x, y) >= safe_distance) layout.coords.emplace_back(x, y);
  }
  return layout;
}

WecDataset generate_dataset(const SyntheticOptions& options) {
  const auto climate = options.climate.empty() ? default_climate(options.site) : options.climate;
  validate_climate(climate);
  Rng rng(options.seed);
  std::vector<FarmLayout> layouts;
  layouts.reserve(options.rows);
  for (std::size_t r = 0; r < options.rows; ++r) layouts.push_back(random_layout(kWecCount, rng));

  WecDataset data;
  data.site = options.site;
  data.rows = options.rows;
  data.values.assign(options.rows * kDatasetColumns, 0.0);
  auto fill = [&](std::size_t r) {
    const auto& layout = layouts[r];
    const FarmPower p =
        annual_average_power(sphere_farm(layout.coords, options.sphere), climate, options.grid);
    double* row = data.values.data() + r * kDatasetColumns;
    for (std::size_t b = 0; b < kWecCount; ++b) {
      row[2 * b] = layout.coords[b].first;
      row[2 * b + 1] = layout.coords[b].second;
      row[kCoordinateColumns + b] = p.per_body[b];
    }
    double total = 0.0;
    for (std::size_t b = 0; b < kWecCount; ++b) total += p.per_body[b];
    row[kDatasetColumns - 1] = total;
  };

  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(options.rows, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < options.rows; r = next++) {
          try {
            fill(r);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return data;
}

}  // namespace wavecast
