#include <gtest/gtest.h>

#include <cctype>

#include "support/gradient_suite.hpp"
#include "wavecast/tensor_ops.hpp"

using namespace wavecast;
using namespace wavecast::testing;

class LayerGradient : public ::testing::TestWithParam<std::size_t> {};

TEST_P(LayerGradient, MatchesCentralDifferences) {
  const auto suite = gradient_suite();
  const auto& [name, check] = suite.at(GetParam());
  for (std::size_t point = 0; point < kGradientPoints; ++point) {
    const auto r = check(derive_seed(1000 + GetParam(), point));
    EXPECT_TRUE(r.passed) << name << " point " << point << ": " << r.describe();
    EXPECT_GT(r.checked, 0u);
  }
}

INSTANTIATE_TEST_SUITE_P(Suite, LayerGradient, ::testing::Range<std::size_t>(0, 7),
                         [](const auto& info) {
                           std::string n = gradient_suite().at(info.param).first;
                           for (auto& c : n)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return n;
                         });

TEST(GradientCheck, RejectsASlightlyWrongGradient) {
  Rng rng(4);
  const Tensor x = random_tensor({6}, rng);
  auto f = [](const Tensor& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::sin(v[i]) * static_cast<double>(i + 1);
    return s;
  };
  Tensor g(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::cos(x[i]) * static_cast<double>(i + 1);
  EXPECT_TRUE(check_gradient(f, x, g).passed);
  g[3] *= 1.0 + 5e-4;
  const auto r = check_gradient(f, x, g);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.worst_index, 3u);
}

TEST(ModelGradient, SmallHybridEndToEnd) {
  for (std::uint64_t point = 0; point < 5; ++point) {
    const auto r = check_small_model(derive_seed(77, point));
    EXPECT_TRUE(r.passed) << r.describe();
  }
}

TEST(ModelGradient, EveryVariantBackpropagates) {
  // Cheaper than a full check: one directional derivative per variant.
  SequenceLayout layout;
  layout.steps = 10;
  for (ModelKind kind : all_model_kinds()) {
    Rng rng(static_cast<std::uint64_t>(kind) + 1);
    Model model = build_model(tiny_hyperparams(), kind, layout, {}, 5);
    std::vector<double> x(layout.input_dim());
    for (auto& v : x) v = rng.uniform();
    auto params = model.parameters();
    zero_gradients(params);
    model.forward(x, Mode::eval);
    model.backward(1.0);

    double directional = 0.0;
    std::vector<Tensor> dirs;
    for (auto& p : params) {
      dirs.push_back(random_tensor(p.value->shape(), rng));
      directional += weighted_sum(*p.grad, dirs.back());
    }
    const double eps = 1e-6;
    auto shifted = [&](double s) {
      for (std::size_t i = 0; i < params.size(); ++i) axpy(s, dirs[i], *params[i].value);
      const double y = model.forward(x, Mode::eval);
      for (std::size_t i = 0; i < params.size(); ++i) axpy(-s, dirs[i], *params[i].value);
      return y;
    };
    const double numeric = (shifted(eps) - shifted(-eps)) / (2 * eps);
    EXPECT_NEAR(directional, numeric, 1e-4 * std::max(1.0, std::fabs(numeric)))
        << model_name(kind);
  }
}
