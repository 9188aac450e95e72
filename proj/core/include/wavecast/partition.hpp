#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wavecast/tensor.hpp"

namespace wavecast {

/// Feature matrix [n, f] with one regression target per row.
struct RegressionData {
  Tensor features;
  std::vector<double> targets;

  std::size_t size() const noexcept { return targets.size(); }
  std::size_t feature_count() const { return features.cols(); }
  RegressionData subset(std::span<const std::size_t> rows) const;
  void validate() const;
};

/// Rows a scaler may be fitted on. Only splitting code produces these in the
/// pipeline, so test rows cannot leak into scaling statistics.
class TrainPartition {
 public:
  explicit TrainPartition(RegressionData data);
  const RegressionData& data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

 private:
  RegressionData data_;
};

/// Held-out rows used only for evaluation or early-stopping monitoring.
class TestPartition {
 public:
  explicit TestPartition(RegressionData data);
  const RegressionData& data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

 private:
  RegressionData data_;
};

struct SplitIndices {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

/// Shuffled 70/30 partition of n rows; requires n >= 10.
SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed);

struct Split {
  TrainPartition train;
  TestPartition test;
  SplitIndices rows;
};

Split split_70_30(const RegressionData& data, std::uint64_t seed);

/// k disjoint validation sets covering all n rows, sizes differing by <= 1.
std::vector<SplitIndices> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

struct Fold {
  std::size_t index;
  TrainPartition train;
  TestPartition validation;
  SplitIndices rows;
};

std::vector<Fold> kfold(const RegressionData& data, std::size_t k, std::uint64_t seed);

}  // namespace wavecast
