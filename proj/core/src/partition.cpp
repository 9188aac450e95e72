#include "wavecast/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

RegressionData RegressionData::subset(std::span<const std::size_t> rows) const {
  const std::size_t f = feature_count();
  RegressionData out{Tensor({rows.size(), f}), std::vector<double>(rows.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= size()) {
      throw ShapeError("row " + std::to_string(rows[i]) + " out of range for " +
                       std::to_string(size()) + " rows");
    }
    auto src = features.row(rows[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.targets[i] = targets[rows[i]];
  }
  return out;
}

void RegressionData::validate() const {
  if (features.rank() != 2) throw ShapeError("features must be a matrix");
  if (features.rows() != targets.size()) {
    throw ShapeError(std::to_string(features.rows()) + " feature rows but " +
                     std::to_string(targets.size()) + " targets");
  }
}

TrainPartition::TrainPartition(RegressionData data) : data_(std::move(data)) { data_.validate(); }
TestPartition::TestPartition(RegressionData data) : data_(std::move(data)) { data_.validate(); }

namespace {

std::vector<std::size_t> shuffled_rows(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(rows);
  return rows;
}

}  // namespace

SplitIndices split_indices(std::size_t n, double train_fraction, std::uint64_t seed) {
  if (n < 10) throw ValidationError("split needs at least 10 rows, got " + std::to_string(n));
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train fraction must lie in (0,1)");
  }
  auto rows = shuffled_rows(n, seed);
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  SplitIndices s;
  s.train_rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test_rows.assign(rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
  return s;
}

Split split_70_30(const RegressionData& data, std::uint64_t seed) {
  data.validate();
  auto rows = split_indices(data.size(), 0.7, seed);
  return Split{TrainPartition(data.subset(rows.train_rows)),
               TestPartition(data.subset(rows.test_rows)), std::move(rows)};
}

std::vector<SplitIndices> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("k-fold needs k >= 2");
  if (k > n) {
    throw ValidationError("k-fold with k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  const auto rows = shuffled_rows(n, seed);
  std::vector<SplitIndices> folds(k);
  std::size_t begin = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      (i >= begin && i < begin + len ? folds[f].test_rows : folds[f].train_rows).push_back(rows[i]);
    }
    begin += len;
  }
  return folds;
}

std::vector<Fold> kfold(const RegressionData& data, std::size_t k, std::uint64_t seed) {
  data.validate();
  std::vector<Fold> out;
  auto folds = kfold_indices(data.size(), k, seed);
  out.reserve(k);
  for (std::size_t f = 0; f < k; ++f) {
    out.push_back(Fold{f, TrainPartition(data.subset(folds[f].train_rows)),
                       TestPartition(data.subset(folds[f].test_rows)), std::move(folds[f])});
  }
  return out;
}

}  // namespace wavecast
