#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wavecast {

/// Seeded pseudo-random source used everywhere a seed appears in the API.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) noexcept;
  double normal(double mean, double stddev);

  /// Derive an independent seed for a child stream.
  std::uint64_t split() noexcept { return engine_(); }

  template <typename T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Mix a base seed with a stream label (fold index, layer index ...).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace wavecast
