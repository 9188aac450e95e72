#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "wavecast/gradcheck.hpp"
#include "wavecast/layer.hpp"
#include "wavecast/model.hpp"
#include "wavecast/partition.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/tensor.hpp"

namespace wavecast::testing {

inline Tensor random_tensor(const Shape& shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(shape);
  for (auto& v : t.values()) v = rng.uniform(lo, hi);
  return t;
}

inline double weighted_sum(const Tensor& y, const Tensor& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * w[i];
  return s;
}

// Checks d/dx and d/dparam of sum(probe * layer(x)) against central differences.
inline GradCheckResult check_layer(Layer& layer, const Tensor& x, const Tensor& probe,
                                   const GradCheckConfig& config = {}) {
  auto params = layer.parameters();
  zero_gradients(params);
  layer.forward(x, Mode::eval);
  const Tensor dx = layer.backward(probe);

  GradCheckResult total;
  auto loss_of_input = [&](const Tensor& xi) {
    return weighted_sum(layer.forward(xi, Mode::eval), probe);
  };
  merge_into(total, check_gradient(loss_of_input, x, dx, config));

  for (auto& p : params) {
    const Tensor analytic = *p.grad;
    auto loss_of_param = [&](const Tensor& v) {
      const Tensor saved = *p.value;
      *p.value = v;
      const double r = weighted_sum(layer.forward(x, Mode::eval), probe);
      *p.value = saved;
      return r;
    };
    merge_into(total, check_gradient(loss_of_param, *p.value, analytic, config));
  }
  return total;
}

// Straight-loop regression metrics, written independently of the library.
struct BruteMetrics {
  double mse, rmse, loss, mae, r2, msle, medae, max_error;
};

inline BruteMetrics brute_metrics(const std::vector<double>& y, const std::vector<double>& p) {
  const std::size_t n = y.size();
  double se = 0, ae = 0, sle = 0, mx = 0, ybar = 0;
  for (std::size_t i = 0; i < n; ++i) ybar += y[i];
  ybar /= n;
  double sst = 0;
  std::vector<double> abs_res(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - p[i];
    se += r * r;
    ae += std::fabs(r);
    const double l = std::log(1 + y[i]) - std::log(1 + p[i]);
    sle += l * l;
    if (std::fabs(r) > mx) mx = std::fabs(r);
    sst += (y[i] - ybar) * (y[i] - ybar);
    abs_res[i] = std::fabs(r);
  }
  // insertion sort keeps the oracle free of library calls
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i; j > 0 && abs_res[j - 1] > abs_res[j]; --j)
      std::swap(abs_res[j - 1], abs_res[j]);
  const double med = n % 2 ? abs_res[n / 2] : 0.5 * (abs_res[n / 2 - 1] + abs_res[n / 2]);
  BruteMetrics m{};
  m.mse = se / n;
  m.rmse = std::sqrt(se / n);
  m.loss = se / (2.0 * n);
  m.mae = ae / n;
  m.r2 = 1 - se / sst;
  m.msle = sle / n;
  m.medae = med;
  m.max_error = mx;
  return m;
}

// y = sum(x) on uniform [0,1] features.
inline RegressionData linear_data(std::size_t rows, std::size_t features, std::uint64_t seed) {
  Rng rng(seed);
  RegressionData d;
  d.features = Tensor({rows, features});
  d.targets.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0;
    for (std::size_t c = 0; c < features; ++c) {
      const double v = rng.uniform();
      d.features(r, c) = v;
      s += v;
    }
    d.targets[r] = s;
  }
  return d;
}

inline HyperParams tiny_hyperparams() {
  HyperParams hp;
  hp.cnf = {2, 2, 2, 2};
  hp.nhu = {2, 2};
  hp.pdo = {0.0, 0.0};
  hp.batch_size = 16;
  hp.learning_rate = 1e-2;
  hp.attention_dim = 2;
  hp.l2_reg = 0.0;
  return hp;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("wavecast_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace wavecast::testing
