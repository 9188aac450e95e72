#include <gtest/gtest.h>

#include "support/helpers.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/metrics.hpp"

using namespace wavecast;
using wavecast::testing::brute_metrics;

namespace {

struct Pair {
  std::vector<double> y, p;
};

Pair random_pair(Rng& rng) {
  Pair out;
  const std::size_t n = 2 + rng.index(199);
  for (std::size_t i = 0; i < n; ++i) {
    out.y.push_back(rng.uniform(-0.5, 3.0));
    out.p.push_back(rng.uniform(-0.5, 3.0));
  }
  return out;
}

}  // namespace

TEST(Metrics, PerfectFit) {
  const std::vector<double> y{0.1, 0.4, 0.9};
  const auto r = evaluate(y, y);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_EQ(r.rmse, 0.0);
  EXPECT_EQ(r.mae, 0.0);
  EXPECT_EQ(r.r2, 1.0);
  EXPECT_EQ(r.msle, 0.0);
  EXPECT_EQ(r.medae, 0.0);
  EXPECT_EQ(r.max_error, 0.0);
}

TEST(Metrics, HandExample) {
  const std::vector<double> y{1, 2, 3}, p{2, 2, 2};
  const auto r = evaluate(y, p);
  EXPECT_DOUBLE_EQ(r.mse, 2.0 / 3.0);
  EXPECT_NEAR(r.rmse, 0.8165, 5e-5);
  EXPECT_DOUBLE_EQ(r.loss, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.mae, 2.0 / 3.0);
  ASSERT_TRUE(r.r2);
  EXPECT_EQ(*r.r2, 0.0);
  EXPECT_EQ(r.medae, 1.0);
  EXPECT_EQ(r.max_error, 1.0);
  EXPECT_EQ(r.n, 3u);
}

TEST(Metrics, ConstantMeanPredictionHasZeroR2) {
  const std::vector<double> y{0.2, 0.5, 0.8, 1.1};
  const std::vector<double> p(4, 0.65);
  EXPECT_NEAR(*evaluate(y, p).r2, 0.0, 1e-15);
}

TEST(Metrics, ErrorsAndUndefinedValues) {
  EXPECT_THROW(evaluate(std::vector<double>{1, 2}, std::vector<double>{1}), ShapeError);
  EXPECT_THROW(evaluate(std::vector<double>{1}, std::vector<double>{1}), ValidationError);
  const auto flat = evaluate(std::vector<double>{2, 2}, std::vector<double>{1, 3});
  EXPECT_FALSE(flat.r2);
  const auto neg = evaluate(std::vector<double>{-2, 1}, std::vector<double>{1, 3});
  EXPECT_FALSE(neg.msle);
  EXPECT_EQ(format_number(flat.r2), "NA");
}

TEST(Metrics, MatchBruteForceOnRandomVectors) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [y, p] = random_pair(rng);
    const auto r = evaluate(y, p);
    const auto b = brute_metrics(y, p);
    EXPECT_NEAR(r.mse, b.mse, 1e-10);
    EXPECT_NEAR(r.rmse, b.rmse, 1e-10);
    EXPECT_NEAR(r.loss, b.loss, 1e-10);
    EXPECT_NEAR(r.mae, b.mae, 1e-10);
    ASSERT_TRUE(r.r2 && r.msle);
    EXPECT_NEAR(*r.r2, b.r2, 1e-10);
    EXPECT_NEAR(*r.msle, b.msle, 1e-10);
    EXPECT_NEAR(r.medae, b.medae, 1e-10);
    EXPECT_NEAR(r.max_error, b.max_error, 1e-10);
  }
}

TEST(Metrics, ReportInvariants) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [y, p] = random_pair(rng);
    const auto r = evaluate(y, p);
    EXPECT_NEAR(r.rmse, std::sqrt(r.mse), 1e-12);
    EXPECT_NEAR(r.loss, r.mse / 2, 1e-12);
    EXPECT_GE(r.mae, 0.0);
    EXPECT_GE(r.max_error, r.medae);
    EXPECT_GE(r.medae, 0.0);
    EXPECT_LE(*r.r2, 1.0);
  }
}

TEST(Metrics, ShiftInvariance) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto [y, p] = random_pair(rng);
    const double c = rng.uniform(-10, 10);
    const auto a = evaluate(y, p);
    for (auto& v : y) v += c;
    for (auto& v : p) v += c;
    const auto b = evaluate(y, p);
    EXPECT_NEAR(a.mse, b.mse, 1e-9);
    EXPECT_NEAR(a.rmse, b.rmse, 1e-9);
    EXPECT_NEAR(a.mae, b.mae, 1e-9);
    EXPECT_NEAR(a.medae, b.medae, 1e-9);
    EXPECT_NEAR(a.max_error, b.max_error, 1e-9);
  }
}

TEST(Metrics, ScaleEquivariance) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto [y, p] = random_pair(rng);
    const double k = rng.uniform(0.01, 100);
    const auto a = evaluate(y, p);
    for (auto& v : y) v *= k;
    for (auto& v : p) v *= k;
    const auto b = evaluate(y, p);
    EXPECT_NEAR(b.mse, k * k * a.mse, 1e-9 * k * k);
    EXPECT_NEAR(b.rmse, k * a.rmse, 1e-9 * k);
    EXPECT_NEAR(b.mae, k * a.mae, 1e-9 * k);
    EXPECT_NEAR(b.medae, k * a.medae, 1e-9 * k);
    EXPECT_NEAR(b.max_error, k * a.max_error, 1e-9 * k);
  }
}

TEST(Aggregate, SingleReport) {
  const auto r = evaluate(std::vector<double>{1, 2, 3}, std::vector<double>{1.5, 2, 2});
  const auto agg = aggregate(std::vector<EvalReport>{r});
  for (Metric m : all_metrics()) {
    const auto& s = agg[m];
    ASSERT_TRUE(s);
    EXPECT_EQ(s->mean, *metric_value(r, m));
    EXPECT_EQ(s->min, s->mean);
    EXPECT_EQ(s->max, s->mean);
    EXPECT_EQ(s->std, 0.0);
  }
}

TEST(Aggregate, PopulationStd) {
  EvalReport a, b;
  a.r2 = 0.8;
  b.r2 = 0.9;
  const auto s = *aggregate(std::vector<EvalReport>{a, b})[Metric::r2];
  EXPECT_NEAR(s.mean, 0.85, 1e-15);
  EXPECT_NEAR(s.std, 0.05, 1e-15);
  EXPECT_EQ(s.min, 0.8);
  EXPECT_EQ(s.max, 0.9);
  EXPECT_THROW(aggregate(std::vector<EvalReport>{}), ValidationError);
}

TEST(Aggregate, ConstantFoldMetric) {
  std::vector<EvalReport> reports(10);
  for (auto& r : reports) r.mae = 0.037;
  const auto s = *aggregate(reports)[Metric::mae];
  EXPECT_EQ(s.mean, 0.037);
  EXPECT_EQ(s.std, 0.0);
}

TEST(Aggregate, TabulatedSydneyRowIsOrdered) {
  // Tuned hybrid, Sydney: mean 0.9105, min 0.9067, max 0.9140.
  const double mean = 0.9105, lo = 0.9067, hi = 0.9140;
  EXPECT_LE(lo, mean);
  EXPECT_LE(mean, hi);
}

TEST(Aggregate, OrderedOnRandomFolds) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<EvalReport> reports;
    const std::size_t k = 1 + rng.index(12);
    for (std::size_t i = 0; i < k; ++i) {
      const auto [y, p] = random_pair(rng);
      reports.push_back(evaluate(y, p));
    }
    const auto agg = aggregate(reports);
    for (Metric m : all_metrics()) {
      const auto& s = agg[m];
      ASSERT_TRUE(s);
      EXPECT_LE(s->min, s->mean);
      EXPECT_LE(s->mean, s->max);
      EXPECT_GE(s->std, 0.0);
    }
  }
}

TEST(ReportCsv, ColumnOrder) {
  EXPECT_EQ(report_csv_header(), "site,model,fold,mse,rmse,loss,mae,r2,msle,medae,max_error");
  const auto r = evaluate(std::vector<double>{1, 2, 3}, std::vector<double>{2, 2, 2});
  const std::string row = report_csv_row("Sydney", "cnn", "1", r);
  EXPECT_EQ(row.rfind("Sydney,cnn,1,", 0), 0u) << row;
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 10);
}
