#include "wavecast_tools/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "wavecast/config.hpp"
#include "wavecast/csv.hpp"
#include "wavecast/dataset.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/physics_io.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/run_io.hpp"
#include "wavecast/synthetic_data.hpp"
#include "wavecast_tools/internal.hpp"

namespace wavecast::cli {

namespace fs = std::filesystem;

std::uint64_t default_seed() {
  const char* env = std::getenv("WAVECAST_SEED");
  if (env == nullptr) return 0;
  std::uint64_t v = 0;
  std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return (ec == std::errc() && ptr == s.data() + s.size()) ? v : 0;
}

Site require_site(const std::string& name) {
  auto s = parse_site(name);
  if (!s) throw ValidationError("unknown site '" + name + "' (Adelaide, Perth, Sydney, Tasmania)");
  return *s;
}

ExperimentConfig read_experiment(const fs::path& path) {
  ExperimentConfig defaults;
  defaults.seed = default_seed();
  ExperimentConfig cfg = parse_config(read_text(path), defaults);
  if (!cfg.data.empty() && cfg.data.is_relative() && !fs::exists(cfg.data)) {
    const fs::path beside = path.parent_path() / cfg.data;
    if (fs::exists(beside)) cfg.data = beside;
  }
  return cfg;
}

RegressionData load_regression(const ExperimentConfig& cfg, std::size_t rows, std::ostream& err) {
  cfg.validate(true);
  auto loaded = load_csv(cfg.data, cfg.site);
  if (!loaded.report.ok()) {
    throw ValidationError(cfg.data.string() + ": " + loaded.report.summary());
  }
  for (const auto& issue : loaded.report.issues) err << issue.describe() << '\n';
  RegressionData data = loaded.dataset.regression();
  if (rows > 0 && rows < data.size()) {
    std::vector<std::size_t> idx(data.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Rng rng(derive_seed(cfg.seed, 0xda7a));
    rng.shuffle(idx);
    idx.resize(rows);
    std::sort(idx.begin(), idx.end());
    data = data.subset(idx);
  }
  return data;
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Site site = require_site(args.site);
    if (!fs::exists(args.data)) throw IoError("no such file: " + args.data.string());
    const auto res = load_csv(args.data, site);
    out << args.data.string() << ": " << res.dataset.rows << " rows, "
        << res.report.summary(args.max_issues);
    return res.report.ok() ? kOk : kInvalid;
  });
}

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ExperimentConfig cfg = read_experiment(args.config);
    if (args.data) cfg.data = *args.data;
    if (args.output) cfg.output = *args.output;
    if (args.seed) cfg.seed = *args.seed;
    if (args.jobs) cfg.jobs = *args.jobs;
    if (args.epochs) cfg.epochs = *args.epochs;
    if (args.model) {
      auto m = parse_model_kind(*args.model);
      if (!m) throw ValidationError("unknown model '" + *args.model + "'");
      cfg.model = *m;
    }
    cfg.validate(true);
    const RegressionData data = load_regression(cfg, args.rows, err);

    const auto start = std::chrono::steady_clock::now();
    const CvOptions options = cfg.cv_options();
    const auto outcomes = cross_validate(data, cfg.model, cfg.hp, options, cfg.seed);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    save_run(cfg.output, make_artifacts(cfg, outcomes, wall, options.layout));

    std::vector<EvalReport> reports;
    for (const auto& o : outcomes) reports.push_back(o.report);
    const auto agg = aggregate(reports);
    out << "run written to " << cfg.output.string() << '\n';
    out << model_name(cfg.model) << " on " << site_name(cfg.site) << ", " << outcomes.size()
        << " fold(s), mean r2 " << format_number(agg[Metric::r2] ? std::optional(agg[Metric::r2]->mean) : std::nullopt)
        << ", mean rmse " << format_number(agg[Metric::rmse]->mean) << '\n';
    return kOk;
  });
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunArtifacts run = load_run(args.run);
    const WecDataset ds = load_dataset(args.data, run.config.site);
    const RegressionData raw = ds.regression();
    const std::string site(site_name(run.config.site));
    const std::string model(model_name(run.config.model));
    out << report_csv_header() << '\n';
    bool any = false;
    for (const auto& f : run.folds) {
      if (args.fold && *args.fold != f.fold) continue;
      any = true;
      Model m = restore_model(run, f.fold, raw.feature_count());
      out << report_csv_row(site, model, std::to_string(f.fold), evaluate_model(m, f.scaler, raw))
          << '\n';
    }
    if (!any) throw ValidationError("run has no fold " + std::to_string(args.fold.value_or(0)));
    return kOk;
  });
}

namespace {

FarmLayout read_layout_csv(const fs::path& path) {
  const auto t = read_numeric_csv(path, {"x_m", "y_m"});
  FarmLayout layout;
  for (const auto& r : t.rows) layout.coords.emplace_back(r[t.column("x_m")], r[t.column("y_m")]);
  return layout;
}

void emit(const std::optional<fs::path>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_text(*path, text);
  } else {
    out << text;
  }
}

}  // namespace

int cmd_landscape(const LandscapeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FarmLayout fixed = read_layout_csv(args.layout);
    const auto climate = read_climate_csv(args.climate);
    SphereOptions sphere;
    sphere.interaction = args.interaction;
    LandscapeOptions options;
    options.step = args.step;
    options.jobs = args.jobs;
    options.grid.refined_points = 0;
    const Landscape land = landscape_scan(
        fixed, [&](const FarmLayout& l) { return sphere_farm(l.coords, sphere); }, climate, options);
    emit(args.output, landscape_csv(land), out);
    const auto& best = land.best();
    (args.output ? out : err) << "best cell x=" << format_number(best.x)
                              << " y=" << format_number(best.y)
                              << " power_w=" << format_number(best.power) << '\n';
    return kOk;
  });
}

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.runs.empty()) throw ValidationError("compare needs at least one run directory");
    std::string csv = "site,model,fold,metric,value\n";
    for (const auto& dir : args.runs) {
      const fs::path mpath = dir / "manifest.txt";
      std::istringstream manifest(read_text(mpath));
      std::string line, version;
      while (std::getline(manifest, line))
        if (line.rfind("schema_version=", 0) == 0) version = line.substr(15);
      if (version != std::to_string(kRunSchemaVersion)) {
        throw SchemaError(dir.string() + ": schema version '" + version + "', expected " +
                          std::to_string(kRunSchemaVersion));
      }
      std::istringstream reports(read_text(dir / "reports.csv"));
      std::getline(reports, line);
      const auto header = split_csv_line(line);
      auto col = [&](std::string_view name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
          if (header[i] == name) return i;
        throw SchemaError(dir.string() + ": reports.csv lacks column " + std::string(name));
      };
      const std::size_t site = col("site"), model = col("model"), fold = col("fold");
      std::vector<std::pair<std::string_view, std::size_t>> metrics;
      for (Metric m : all_metrics()) metrics.emplace_back(metric_name(m), col(metric_name(m)));
      while (std::getline(reports, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw SchemaError(dir.string() + ": ragged reports.csv");
        if (!parse_double(cells[fold])) continue;  // aggregate rows
        for (const auto& [name, idx] : metrics) {
          csv += cells[site] + "," + cells[model] + "," + cells[fold] + "," + std::string(name) +
                 "," + cells[idx] + "\n";
        }
      }
    }
    emit(args.output, csv, out);
    return kOk;
  });
}

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SyntheticOptions options;
    options.site = require_site(args.site);
    options.rows = args.rows;
    options.seed = args.seed;
    options.jobs = args.jobs;
    if (args.rows == 0) throw ValidationError("rows must be positive");
    const WecDataset ds = generate_dataset(options);
    write_dataset_csv(args.output, ds);
    out << "wrote " << ds.rows << " synthetic rows to " << args.output.string() << '\n';
    return kOk;
  });
}

}  // namespace wavecast::cli
