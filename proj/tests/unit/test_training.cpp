#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/helpers.hpp"
#include "wavecast/cross_validation.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/optimizer.hpp"
#include "wavecast/scaler.hpp"
#include "wavecast/training.hpp"

using namespace wavecast;
using namespace wavecast::testing;

namespace {

RegressionData column_data(std::vector<double> column, std::vector<double> targets) {
  RegressionData d;
  const std::size_t n = column.size();
  d.features = Tensor({n, 1}, std::move(column));
  d.targets = std::move(targets);
  return d;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

SequenceLayout short_layout() {
  SequenceLayout l;
  l.steps = 10;
  return l;
}

}  // namespace

TEST(Scaler, EndpointsAndMidpoint) {
  const auto s = minmax_fit(TrainPartition(column_data({0, 5, 10}, {1, 2, 3})));
  const Tensor x = s.apply(Tensor({3, 1}, std::vector<double>{0, 5, 10}));
  EXPECT_EQ(x, Tensor({3, 1}, std::vector<double>{0, 0.5, 1}));
  EXPECT_TRUE(s.warnings().empty());
}

TEST(Scaler, ConstantFeatureMapsToZeroWithWarning) {
  const auto s = minmax_fit(TrainPartition(column_data({3, 3, 3}, {1, 2, 3})));
  EXPECT_EQ(s.apply(Tensor({3, 1}, 3.0)), Tensor({3, 1}));
  ASSERT_EQ(s.warnings().size(), 1u);
  EXPECT_EQ(s.constant_features(), std::vector<std::size_t>{0});
}

TEST(Scaler, RoundTripAndUnitRangeOnFitRows) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    RegressionData d;
    const std::size_t n = 5 + rng.index(50), f = 1 + rng.index(6);
    d.features = random_tensor({n, f}, rng, -1e3, 1e3);
    for (std::size_t i = 0; i < n; ++i) d.targets.push_back(rng.uniform(0, 5e5));
    const auto s = minmax_fit(TrainPartition(d));
    const Tensor scaled = s.apply(d.features);
    for (double v : scaled.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const Tensor back = s.invert(scaled);
    for (std::size_t i = 0; i < back.size(); ++i)
      EXPECT_LT(std::fabs(back[i] - d.features[i]), 1e-12 * std::max(1.0, std::fabs(d.features[i])));
    for (double y : d.targets) EXPECT_NEAR(s.invert_target(s.apply_target(y)), y, 1e-12 * y + 1e-12);
  }
}

TEST(Split, SeventyThirtyPartition) {
  const auto s = split_indices(100, 0.7, 9);
  EXPECT_EQ(s.train_rows.size(), 70u);
  EXPECT_EQ(s.test_rows.size(), 30u);
  auto all = s.train_rows;
  all.insert(all.end(), s.test_rows.begin(), s.test_rows.end());
  std::vector<std::size_t> expect(100);
  std::iota(expect.begin(), expect.end(), std::size_t{0});
  EXPECT_EQ(sorted(all), expect);
  const auto again = split_indices(100, 0.7, 9);
  EXPECT_EQ(again.train_rows, s.train_rows);
  EXPECT_NE(split_indices(100, 0.7, 10).train_rows, s.train_rows);
}

TEST(Split, ProportionsWithinOneRow) {
  for (std::size_t n = 10; n < 300; n += 7) {
    const auto s = split_indices(n, 0.7, n);
    EXPECT_LE(std::fabs(static_cast<double>(s.train_rows.size()) - 0.7 * n), 1.0);
    EXPECT_EQ(s.train_rows.size() + s.test_rows.size(), n);
  }
  EXPECT_THROW(split_indices(9, 0.7, 0), ValidationError);
}

TEST(Split, PartitionsCarryTheirRows) {
  const auto d = linear_data(40, 3, 2);
  const auto s = split_70_30(d, 4);
  ASSERT_EQ(s.train.size(), 28u);
  for (std::size_t i = 0; i < s.train.size(); ++i)
    EXPECT_EQ(s.train.data().targets[i], d.targets[s.rows.train_rows[i]]);
}

TEST(KFold, TenFoldsOfTen) {
  const auto folds = kfold_indices(100, 10, 3);
  ASSERT_EQ(folds.size(), 10u);
  std::vector<int> seen(100, 0);
  for (const auto& f : folds) {
    EXPECT_EQ(f.test_rows.size(), 10u);
    EXPECT_EQ(f.train_rows.size(), 90u);
    for (auto r : f.test_rows) ++seen[r];
  }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

TEST(KFold, PartitionLawOnRandomSizes) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(9), n = k + rng.index(100);
    const auto folds = kfold_indices(n, k, trial);
    std::size_t lo = n, hi = 0;
    std::vector<int> seen(n, 0);
    for (const auto& f : folds) {
      lo = std::min(lo, f.test_rows.size());
      hi = std::max(hi, f.test_rows.size());
      std::set<std::size_t> train(f.train_rows.begin(), f.train_rows.end());
      for (auto r : f.test_rows) {
        ++seen[r];
        EXPECT_FALSE(train.count(r));
      }
      EXPECT_EQ(f.train_rows.size() + f.test_rows.size(), n);
    }
    EXPECT_LE(hi - lo, 1u);
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
  EXPECT_THROW(kfold_indices(5, 10, 0), ValidationError);
}

TEST(Adam, ZeroLearningRateIsANullUpdate) {
  auto hp = tiny_hyperparams();
  hp.learning_rate = 0.0;
  hp.l2_reg = 1e-2;
  Model m = build_model(tiny_hyperparams(), ModelKind::cnn_bilstm_sa, short_layout(), {}, 1);
  const auto before = m.snapshot();
  train(m, TrainPartition(linear_data(40, 20, 3)), hp, {5, 0}, 1);
  EXPECT_EQ(m.snapshot(), before);
}

TEST(Adam, L2PenaltySkipsBiases) {
  Tensor w({2}, 3.0), gw({2}), b({1}, 5.0), gb({1});
  std::vector<ParamRef> params{{"w", &w, &gw, true}, {"b", &b, &gb, false}};
  EXPECT_DOUBLE_EQ(l2_penalty(params, 0.5), 0.5 * 18.0);
}

TEST(Train, LinearTargetLossFallsTenfold) {
  auto hp = tiny_hyperparams();
  hp.cnf = {4, 4, 4, 4};
  hp.learning_rate = 1e-2;
  hp.batch_size = 16;
  const auto raw = linear_data(200, 20, 4);
  const auto scaler = minmax_fit(TrainPartition(raw));
  const TrainPartition part(minmax_apply(scaler, raw));
  Model m = build_model(hp, ModelKind::cnn, short_layout(), {}, 2);
  const auto run = train(m, part, hp, {50, 0}, 3);
  EXPECT_EQ(run.loss_trace.size(), 50u);
  EXPECT_LT(run.final_loss, 0.1 * run.initial_loss)
      << "initial " << run.initial_loss << " final " << run.final_loss;
}

TEST(Train, FullBatchMatchesOneManualStep) {
  auto hp = tiny_hyperparams();
  hp.l2_reg = 1e-3;
  const auto data = linear_data(24, 20, 5);
  for (std::size_t bs : {24u, 500u}) {
    hp.batch_size = bs;
    Model trained = build_model(hp, ModelKind::cnn_gru, short_layout(), {}, 6);
    train(trained, TrainPartition(data), hp, {1, 0}, 7);

    Model manual = build_model(hp, ModelKind::cnn_gru, short_layout(), {}, 6);
    auto params = manual.parameters();
    Adam adam(params, {hp.learning_rate, 0.9, 0.999, 1e-8, hp.l2_reg});
    zero_gradients(params);
    for (std::size_t r = 0; r < data.size(); ++r) {
      const double e = manual.forward(data.features.row(r), Mode::train) - data.targets[r];
      manual.backward(e / data.size());
    }
    adam.step();

    const auto a = trained.snapshot(), b = manual.snapshot();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j) EXPECT_NEAR(a[i][j], b[i][j], 1e-12);
  }
}

TEST(Train, NonFiniteLossAbortsNamingEpochAndBatch) {
  auto hp = tiny_hyperparams();
  hp.learning_rate = 1e300;
  hp.batch_size = 1;
  Model m = build_model(hp, ModelKind::cnn, short_layout(), {}, 8);
  try {
    train(m, TrainPartition(linear_data(20, 20, 9)), hp, {3, 0}, 1);
    FAIL() << "expected an abort";
  } catch (const NumericalAbort& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("epoch 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("batch"), std::string::npos) << msg;
  }
}

TEST(Train, EarlyStoppingRestoresBestMonitorEpoch) {
  auto hp = tiny_hyperparams();
  hp.learning_rate = 5e-2;
  const auto d = linear_data(60, 20, 10);
  const auto split = split_70_30(d, 1);
  Model m = build_model(hp, ModelKind::cnn, short_layout(), {}, 11);
  const auto run = train(m, split.train, hp, {200, 3}, 12, &split.test);
  ASSERT_EQ(run.monitor_trace.size(), run.loss_trace.size());
  const double best = *std::min_element(run.monitor_trace.begin(), run.monitor_trace.end());
  EXPECT_EQ(run.monitor_trace.at(run.best_epoch - 1), best);
  EXPECT_DOUBLE_EQ(regression_loss(m, split.test.data()), best);
  for (double l : run.loss_trace) EXPECT_TRUE(std::isfinite(l));
}

TEST(CrossValidation, IndependentOfWorkerCount) {
  auto hp = tiny_hyperparams();
  CvOptions opt;
  opt.folds = 4;
  opt.train = {4, 2};
  opt.layout = short_layout();
  const auto data = linear_data(60, 20, 13);
  opt.jobs = 1;
  const auto serial = cross_validate(data, ModelKind::cnn_lstm, hp, opt, 21);
  opt.jobs = 3;
  const auto parallel = cross_validate(data, ModelKind::cnn_lstm, hp, opt, 21);
  ASSERT_EQ(serial.size(), 4u);
  for (std::size_t f = 0; f < serial.size(); ++f) {
    EXPECT_EQ(serial[f].fold, parallel[f].fold);
    EXPECT_EQ(serial[f].run.parameters, parallel[f].run.parameters);
    EXPECT_EQ(serial[f].report.mse, parallel[f].report.mse);
    EXPECT_EQ(serial[f].run.loss_trace, parallel[f].run.loss_trace);
  }
}

TEST(CrossValidation, HoldoutGivesOneFold) {
  CvOptions opt;
  opt.mode = CvMode::holdout_70_30;
  opt.train = {2, 0};
  opt.layout = short_layout();
  const auto out = cross_validate(linear_data(40, 20, 14), ModelKind::gru, tiny_hyperparams(),
                                  opt, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].report.n, 12u);
}
