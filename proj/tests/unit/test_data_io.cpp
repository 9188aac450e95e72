#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/helpers.hpp"
#include "wavecast/config.hpp"
#include "wavecast/cross_validation.hpp"
#include "wavecast/dataset.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/physics_io.hpp"
#include "wavecast/run_io.hpp"

using namespace wavecast;
using namespace wavecast::testing;
namespace fs = std::filesystem;

namespace {

fs::path fixture(const char* name) { return fs::path(WAVECAST_FIXTURE_DIR) / name; }

bool has_issue(const ValidationReport& r, std::size_t line, std::size_t column,
               std::string_view text) {
  for (const auto& i : r.issues)
    if (i.line == line && i.column == column && i.message.find(text) != std::string::npos)
      return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

void overwrite(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct SavedRun {
  RunArtifacts artifacts;
  RegressionData data;
  fs::path dir;
};

SavedRun small_run(const std::string& name) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::cnn_lstm;
  cfg.hp = tiny_hyperparams();
  cfg.epochs = 3;
  cfg.patience = 0;
  cfg.cv = CvMode::holdout_70_30;
  cfg.seed = 5;
  SavedRun out;
  out.data = linear_data(100, 32, 6);
  const auto outcomes = cross_validate(out.data, cfg.model, cfg.hp, cfg.cv_options(), cfg.seed);
  out.artifacts = make_artifacts(cfg, outcomes, 0.5);
  out.dir = fresh_dir(name);
  save_run(out.dir, out.artifacts);
  return out;
}

}  // namespace

TEST(Dataset, CleanFixtureLoads) {
  const auto res = load_csv(fixture("clean_3rows.csv"), Site::perth);
  EXPECT_EQ(res.report.error_count(), 0u) << res.report.summary();
  EXPECT_EQ(res.dataset.rows, 3u);
  EXPECT_EQ(res.dataset.site, Site::perth);
  // Short files only warn about the row count.
  ASSERT_EQ(res.report.warning_count(), 1u);
  EXPECT_NE(res.report.issues[0].message.find("72000"), std::string::npos);
  const auto reg = res.dataset.regression();
  EXPECT_EQ(reg.features.shape(), (std::vector<std::size_t>{3, 32}));
  EXPECT_EQ(reg.targets[2], res.dataset.at(2, 48));
}

TEST(Dataset, WrongColumnCountIsNamed) {
  const auto res = load_csv(fixture("cols48.csv"), Site::sydney);
  EXPECT_GT(res.report.error_count(), 0u);
  EXPECT_TRUE(has_issue(res.report, 2, 0, "expected 49 columns, got 48")) << res.report.summary();
  EXPECT_THROW(load_dataset(fixture("cols48.csv"), Site::sydney), ValidationError);
}

TEST(Dataset, OutOfRangeCoordinateNamesRowAndColumn) {
  const auto res = load_csv(fixture("x1_600.csv"), Site::sydney);
  EXPECT_EQ(res.report.error_count(), 1u) << res.report.summary();
  EXPECT_TRUE(has_issue(res.report, 3, 1, "600")) << res.report.summary();
}

TEST(Dataset, TotalMustEqualSumOfPowers) {
  const auto res = load_csv(fixture("bad_sum.csv"), Site::sydney);
  EXPECT_TRUE(has_issue(res.report, 4, 49, "differs from the sum")) << res.report.summary();
  try {
    load_dataset(fixture("bad_sum.csv"), Site::sydney);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Dataset, EveryIssueIsCollected) {
  const auto dir = fresh_dir("many_issues");
  std::string text = dataset_header() + "\n";
  const auto clean = slurp(fixture("clean_3rows.csv"));
  const auto row = clean.substr(clean.find('\n') + 1, clean.find('\n', clean.find('\n') + 1) -
                                                          clean.find('\n') - 1);
  text += "-1" + row.substr(row.find(',')) + "\n";
  text += "abc" + row.substr(row.find(',')) + "\n";
  text += row + ",7\n";
  overwrite(dir / "d.csv", text);
  const auto res = load_csv(dir / "d.csv", Site::sydney);
  EXPECT_TRUE(has_issue(res.report, 2, 1, "outside"));
  EXPECT_TRUE(has_issue(res.report, 3, 1, "not a number"));
  EXPECT_TRUE(has_issue(res.report, 4, 0, "got 50"));
  EXPECT_EQ(res.dataset.rows, 1u);
}

TEST(Dataset, WriteThenLoadIsExact) {
  const auto original = load_dataset(fixture("clean_3rows.csv"), Site::tasmania);
  const auto dir = fresh_dir("dataset_roundtrip");
  write_dataset_csv(dir / "d.csv", original);
  const auto again = load_dataset(dir / "d.csv", Site::tasmania);
  EXPECT_EQ(again.values, original.values);
  EXPECT_THROW(load_csv(dir / "missing.csv", Site::sydney), IoError);
}

TEST(Dataset, SiteNames) {
  for (Site s : {Site::adelaide, Site::perth, Site::sydney, Site::tasmania})
    EXPECT_EQ(parse_site(site_name(s)), s);
  EXPECT_FALSE(parse_site("hobart"));
}

TEST(Config, ParsesKnownKeys) {
  const auto cfg = parse_config(
      "# comment\nsite = perth\nmodel = cnn-gru\nlearning_rate = 0.001\ncnf3 = 16\nfolds = 5\n"
      "order = blocked\n");
  EXPECT_EQ(cfg.site, Site::perth);
  EXPECT_EQ(cfg.model, ModelKind::cnn_gru);
  EXPECT_EQ(cfg.hp.learning_rate, 1e-3);
  EXPECT_EQ(cfg.hp.cnf[2], 16u);
  EXPECT_EQ(cfg.folds, 5u);
  EXPECT_EQ(cfg.order, CoordinateOrder::blocked);
  const auto back = parse_config(config_text(cfg));
  EXPECT_EQ(config_text(back), config_text(cfg));
}

TEST(Config, ErrorsNameTheLine) {
  for (const char* text : {"site = sydney\ncolour = red\n", "site = sydney\nepochs = -3\n",
                           "site = sydney\nno equals sign\n", "site = sydney\nmodel = mlp\n"}) {
    try {
      parse_config(text);
      FAIL() << "accepted: " << text;
    } catch (const ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
  }
}

TEST(RunIo, RoundTripReproducesPredictions) {
  const auto saved = small_run("run_roundtrip");
  const auto loaded = load_run(saved.dir);
  ASSERT_EQ(loaded.folds.size(), 1u);
  const auto& a = saved.artifacts.folds[0];
  const auto& b = loaded.folds[0];
  EXPECT_EQ(b.loss_trace, a.loss_trace);
  EXPECT_EQ(b.param_names, a.param_names);
  for (std::size_t i = 0; i < a.params.size(); ++i) EXPECT_EQ(b.params[i], a.params[i]);
  EXPECT_EQ(b.report.mse, a.report.mse);
  EXPECT_EQ(config_text(loaded.config), config_text(saved.artifacts.config));

  Model m1 = restore_model(saved.artifacts, a.fold, 32);
  Model m2 = restore_model(loaded, b.fold, 32);
  for (std::size_t r = 0; r < saved.data.size(); ++r) {
    const auto x = saved.data.features.row(r);
    EXPECT_EQ(m1.forward(x, Mode::eval), m2.forward(x, Mode::eval));
  }
}

TEST(RunIo, SchemaVersionMismatchIsRejected) {
  const auto saved = small_run("run_schema");
  auto manifest = slurp(saved.dir / "manifest.txt");
  const auto at = manifest.find("schema_version=");
  ASSERT_NE(at, std::string::npos);
  manifest.replace(at, manifest.find('\n', at) - at, "schema_version=99");
  overwrite(saved.dir / "manifest.txt", manifest);
  try {
    load_run(saved.dir);
    FAIL() << "expected a schema error";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos) << e.what();
  }
}

TEST(RunIo, InputWidthMismatchIsRejected) {
  const auto saved = small_run("run_width");
  EXPECT_THROW(restore_model(saved.artifacts, saved.artifacts.folds[0].fold, 48), SchemaError);
  EXPECT_THROW(restore_model(saved.artifacts, 99), SchemaError);
}

TEST(RunIo, TruncatedParametersAreRejected) {
  const auto saved = small_run("run_truncated");
  fs::path params;
  for (const auto& e : fs::recursive_directory_iterator(saved.dir))
    if (e.path().filename() == "params.txt") params = e.path();
  ASSERT_FALSE(params.empty());
  auto text = slurp(params);
  overwrite(params, text.substr(0, text.size() / 2));
  EXPECT_THROW(load_run(saved.dir), SchemaError);
}

TEST(PhysicsIo, ClimateFixture) {
  const auto c = read_climate_csv(fixture("climate.csv"));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[1].hs, 2.5);
  EXPECT_EQ(c[1].beta, 0.3);
  EXPECT_EQ(c[2].occurrence, 0.2);
  const auto dir = fresh_dir("climate_roundtrip");
  write_climate_csv(dir / "c.csv", c);
  const auto again = read_climate_csv(dir / "c.csv");
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(again[i].tp, c[i].tp);
    EXPECT_EQ(again[i].occurrence, c[i].occurrence);
  }
}

TEST(PhysicsIo, LandscapeCsvMarksMaskedCells) {
  Landscape land;
  land.xs = {0, 10};
  land.ys = {0};
  land.cells = {{0, 0, true, 12.5}, {10, 0, false, std::nullopt}};
  EXPECT_EQ(landscape_csv(land), "x_m,y_m,power_w,feasible\n0,0,12.5,1\n10,0,NA,0\n");
}
