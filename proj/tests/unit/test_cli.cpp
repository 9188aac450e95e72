#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/helpers.hpp"
#include "wavecast/run_io.hpp"
#include "wavecast_tools/commands.hpp"

using namespace wavecast;
using namespace wavecast::cli;
namespace fs = std::filesystem;

namespace {

fs::path fixture(const char* name) { return fs::path(WAVECAST_FIXTURE_DIR) / name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

struct Io {
  std::ostringstream out, err;
};

// A synthetic dataset plus a fast config beside it.
fs::path small_experiment(const std::string& name, const std::string& extra = "") {
  const fs::path dir = wavecast::testing::fresh_dir(name);
  Io io;
  GenerateArgs g;
  g.rows = 60;
  g.seed = 3;
  g.output = dir / "data.csv";
  EXPECT_EQ(cmd_generate(g, io.out, io.err), kOk) << io.err.str();
  std::ofstream(dir / "exp.cfg") << "site = Sydney\nmodel = cnn-gru\ndata = data.csv\nseed = 9\n"
                                    "epochs = 2\npatience = 0\n"
                                    "cnf1 = 2\ncnf2 = 2\ncnf3 = 2\ncnf4 = 2\nnhu1 = 2\nnhu2 = 2\n"
                                    "batch_size = 16\n"
                                 << extra;
  return dir;
}

int train_into(const fs::path& dir, const fs::path& output, Io& io) {
  TrainArgs t;
  t.config = dir / "exp.cfg";
  t.output = output;
  return cmd_train(t, io.out, io.err);
}

}  // namespace

TEST(CliValidate, ExitCodes) {
  Io ok, bad, sum, missing, site;
  EXPECT_EQ(cmd_validate({fixture("clean_3rows.csv"), "Sydney", 50}, ok.out, ok.err), kOk)
      << ok.err.str();
  EXPECT_EQ(cmd_validate({fixture("x1_600.csv"), "Sydney", 50}, bad.out, bad.err), kInvalid);
  EXPECT_NE((bad.out.str() + bad.err.str()).find("column 1"), std::string::npos)
      << bad.out.str() << bad.err.str();
  EXPECT_EQ(cmd_validate({fixture("bad_sum.csv"), "Sydney", 50}, sum.out, sum.err), kInvalid);
  EXPECT_NE((sum.out.str() + sum.err.str()).find("line 4"), std::string::npos);
  EXPECT_EQ(cmd_validate({fixture("nope.csv"), "Sydney", 50}, missing.out, missing.err), kUsage);
  EXPECT_NE(missing.err.str().find("nope.csv"), std::string::npos) << missing.err.str();
  EXPECT_EQ(cmd_validate({fixture("clean_3rows.csv"), "Atlantis", 50}, site.out, site.err),
            kInvalid);
}

TEST(CliTrain, KfoldRunWritesFoldAndSummaryRows) {
  const auto dir = small_experiment("cli_train");
  Io io;
  ASSERT_EQ(train_into(dir, dir / "run", io), kOk) << io.err.str();
  const auto rows = lines_of(slurp(dir / "run" / "reports.csv"));
  // Header, ten folds, then mean/std/min/max.
  EXPECT_EQ(rows.size(), 1u + 10u + 4u);
  EXPECT_EQ(load_run(dir / "run").folds.size(), 10u);
}

TEST(CliTrain, HoldoutWritesOneFold) {
  const auto dir = small_experiment("cli_holdout", "cv = 70-30\n");
  Io io;
  ASSERT_EQ(train_into(dir, dir / "run", io), kOk) << io.err.str();
  EXPECT_EQ(load_run(dir / "run").folds.size(), 1u);
}

TEST(CliTrain, RerunIsByteIdentical) {
  const auto dir = small_experiment("cli_determinism", "cv = 70-30\njobs = 2\n");
  Io a, b;
  ASSERT_EQ(train_into(dir, dir / "run", a), kOk) << a.err.str();
  fs::copy(dir / "run", dir / "first", fs::copy_options::recursive);
  ASSERT_EQ(train_into(dir, dir / "run", b), kOk) << b.err.str();
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir / "first")) {
    // run_info.txt holds the wall time.
    if (!e.is_regular_file() || e.path().filename() == "run_info.txt") continue;
    const auto rel = fs::relative(e.path(), dir / "first");
    EXPECT_EQ(slurp(e.path()), slurp(dir / "run" / rel)) << rel;
    ++compared;
  }
  EXPECT_GE(compared, 6u);
}

TEST(CliTrain, BadConfigIsInvalid) {
  const auto dir = small_experiment("cli_badcfg", "learning_rate = -1\n");
  Io io;
  EXPECT_EQ(train_into(dir, dir / "run", io), kInvalid);
  EXPECT_FALSE(io.err.str().empty());
}

TEST(CliEvaluate, ScoresEveryFold) {
  const auto dir = small_experiment("cli_eval", "cv = 70-30\n");
  Io t, e;
  ASSERT_EQ(train_into(dir, dir / "run", t), kOk) << t.err.str();
  EXPECT_EQ(cmd_evaluate({dir / "run", dir / "data.csv", std::nullopt}, e.out, e.err), kOk)
      << e.err.str();
  EXPECT_EQ(lines_of(e.out.str()).size(), 2u);
  Io missing;
  EXPECT_EQ(cmd_evaluate({dir / "run", dir / "data.csv", 7}, missing.out, missing.err), kInvalid);
}

TEST(CliTune, SyntheticEgsImprovesOnTheStart) {
  const auto dir = wavecast::testing::fresh_dir("cli_tune_egs");
  TuneArgs a;
  a.objective = "synthetic";
  a.budget = 300;
  a.seed = 4;
  a.trace = dir / "trace.csv";
  a.best = dir / "best.cfg";
  Io io;
  ASSERT_EQ(cmd_tune(a, io.out, io.err), kOk) << io.err.str();
  const auto rows = lines_of(slurp(a.trace));
  ASSERT_EQ(rows.size(), 301u);
  const auto header = rows.front();
  const auto column = std::count(header.begin(), header.begin() + header.find("best_so_far"), ',');
  std::istringstream last(rows.back());
  std::string cell;
  for (long i = 0; i <= column; ++i) std::getline(last, cell, ',');
  const double best = std::stod(cell);
  EXPECT_GT(best, 0.9);
  EXPECT_LE(best, 1.0);
  EXPECT_NE(slurp(a.best).find("learning_rate"), std::string::npos);
}

TEST(CliTune, RandomBudgetOne) {
  const auto dir = wavecast::testing::fresh_dir("cli_tune_random");
  TuneArgs a;
  a.objective = "synthetic";
  a.optimizer = "random";
  a.budget = 1;
  a.trace = dir / "trace.csv";
  a.best = dir / "best.cfg";
  Io io;
  ASSERT_EQ(cmd_tune(a, io.out, io.err), kOk) << io.err.str();
  EXPECT_EQ(lines_of(slurp(a.trace)).size(), 2u);
}

TEST(CliTune, RejectedRequests) {
  const auto dir = wavecast::testing::fresh_dir("cli_tune_rejected");
  TuneArgs a;
  a.objective = "synthetic";
  a.trace = dir / "trace.csv";
  a.best = dir / "best.cfg";
  Io nm;
  a.optimizer = "nm";
  EXPECT_EQ(cmd_tune(a, nm.out, nm.err), kInvalid);
  EXPECT_NE(nm.err.str().find("--relax"), std::string::npos) << nm.err.str();

  Io relaxed;
  a.relax = true;
  a.budget = 40;
  EXPECT_EQ(cmd_tune(a, relaxed.out, relaxed.err), kOk) << relaxed.err.str();

  Io small;
  a.optimizer = "egs";
  a.budget = 24;
  EXPECT_EQ(cmd_tune(a, small.out, small.err), kInvalid);
  EXPECT_NE(small.err.str().find("25"), std::string::npos) << small.err.str();

  Io unknown;
  a.optimizer = "anneal";
  a.budget = 30;
  EXPECT_EQ(cmd_tune(a, unknown.out, unknown.err), kInvalid);
}

TEST(CliLandscape, MasksCellsNearBuoys) {
  const auto dir = wavecast::testing::fresh_dir("cli_landscape");
  LandscapeArgs a;
  a.layout = fixture("layout_3buoys.csv");
  a.climate = fixture("climate.csv");
  a.step = 50.0;
  a.output = dir / "land.csv";
  Io io;
  ASSERT_EQ(cmd_landscape(a, io.out, io.err), kOk) << io.err.str();
  const auto rows = lines_of(slurp(dir / "land.csv"));
  ASSERT_EQ(rows.size(), 1u + 12u * 12u);
  // (100,100) holds a buoy.
  EXPECT_NE(std::find(rows.begin(), rows.end(), "100,100,NA,0"), rows.end());
  EXPECT_NE(io.out.str().find("best cell"), std::string::npos);

  Io tiled;
  a.layout = fixture("layout_tiling.csv");
  EXPECT_EQ(cmd_landscape(a, tiled.out, tiled.err), kInvalid);
}

TEST(CliCompare, LongFormatAndSchemaErrors) {
  const auto dir = small_experiment("cli_compare", "cv = 70-30\n");
  Io t1, t2;
  ASSERT_EQ(train_into(dir, dir / "r1", t1), kOk) << t1.err.str();
  ASSERT_EQ(train_into(dir, dir / "r2", t2), kOk) << t2.err.str();
  Io io;
  ASSERT_EQ(cmd_compare({{dir / "r1", dir / "r2"}, std::nullopt}, io.out, io.err), kOk)
      << io.err.str();
  const auto rows = lines_of(io.out.str());
  EXPECT_EQ(rows.front(), "site,model,fold,metric,value");
  // Two runs, one fold each, eight metrics.
  EXPECT_EQ(rows.size(), 1u + 2u * 8u);

  auto reports = slurp(dir / "r2" / "reports.csv");
  reports.replace(reports.find(",mae,"), 5, ",xxx,");
  std::ofstream(dir / "r2" / "reports.csv", std::ios::trunc) << reports;
  Io broken;
  EXPECT_EQ(cmd_compare({{dir / "r1", dir / "r2"}, std::nullopt}, broken.out, broken.err),
            kInvalid);
  EXPECT_NE(broken.err.str().find("r2"), std::string::npos) << broken.err.str();
  EXPECT_NE(broken.err.str().find("mae"), std::string::npos) << broken.err.str();
}

TEST(CliGenerate, SeededAndValid) {
  const auto dir = wavecast::testing::fresh_dir("cli_generate");
  Io a, b, v;
  GenerateArgs g;
  g.rows = 20;
  g.seed = 8;
  g.output = dir / "a.csv";
  ASSERT_EQ(cmd_generate(g, a.out, a.err), kOk) << a.err.str();
  g.output = dir / "b.csv";
  ASSERT_EQ(cmd_generate(g, b.out, b.err), kOk);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(cmd_validate({dir / "a.csv", "Sydney", 50}, v.out, v.err), kOk) << v.err.str();
  g.rows = 0;
  EXPECT_EQ(cmd_generate(g, a.out, a.err), kInvalid);
}
