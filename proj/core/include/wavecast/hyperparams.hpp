#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace wavecast {

/// The twelve tunable scalars of the hybrid model. Defaults are the
/// canonical configuration (filters 256/128/64/32, units 32/16, dropout 0.05,
/// batch 32, learning rate 1e-4, attention 32, L2 1e-4).
struct HyperParams {
  static constexpr std::size_t kDimensions = 12;

  std::array<std::size_t, 4> cnf{256, 128, 64, 32};
  std::array<std::size_t, 2> nhu{32, 16};
  std::array<double, 2> pdo{0.05, 0.05};
  std::size_t batch_size = 32;
  double learning_rate = 1e-4;
  std::size_t attention_dim = 32;
  double l2_reg = 1e-4;

  /// Throws ValidationError naming the first offending field.
  void validate() const;

  /// Order: cnf1..4, nhu1, nhu2, pdo1, pdo2, batch_size, learning_rate,
  /// attention_dim, l2_reg.
  std::array<double, kDimensions> to_vector() const;
  /// Integer fields are rounded to the nearest integer.
  static HyperParams from_vector(std::span<const double> values);
  static const std::array<std::string_view, kDimensions>& field_names();

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

/// Index of each field inside `HyperParams::to_vector()`.
enum HyperParamIndex : std::size_t {
  kCnf1 = 0, kCnf2, kCnf3, kCnf4, kNhu1, kNhu2, kPdo1, kPdo2,
  kBatchSize, kLearningRate, kAttentionDim, kL2Reg
};

}  // namespace wavecast
