#include "wavecast/run_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "wavecast/csv.hpp"
#include "wavecast/errors.hpp"

namespace wavecast {

namespace fs = std::filesystem;

RunArtifacts make_artifacts(const ExperimentConfig& config,
                            const std::vector<FoldOutcome>& outcomes, double wall_seconds,
                            const SequenceLayout& layout) {
  RunArtifacts run;
  run.config = config;
  run.layout = layout;
  run.layout.order = config.order;
  run.wall_seconds = wall_seconds;
  for (const auto& o : outcomes) {
    FoldArtifact f;
    f.fold = o.fold;
    Model probe(config.model, config.hp, run.layout, config.architecture, 0);
    for (const auto& p : probe.parameters()) f.param_names.push_back(p.name);
    f.params = o.run.parameters;
    if (f.params.size() != f.param_names.size()) {
      throw ShapeError("fold " + std::to_string(o.fold) + " has " + std::to_string(f.params.size()) +
                       " parameter tensors, model expects " + std::to_string(f.param_names.size()));
    }
    f.scaler = o.scaler;
    f.loss_trace = o.run.loss_trace;
    f.monitor_trace = o.run.monitor_trace;
    f.report = o.report;
    run.folds.push_back(std::move(f));
  }
  return run;
}

namespace {

std::string fold_dir(std::size_t fold) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fold_%02zu", fold);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_number(v[i]);
  }
  return s;
}

std::map<std::string, std::string> read_keys(const fs::path& path) {
  std::map<std::string, std::string> kv;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key,
                           const fs::path& file) {
  auto it = kv.find(key);
  if (it == kv.end()) throw SchemaError(file.string() + " lacks key " + key);
  return it->second;
}

double number(std::string_view text, const fs::path& file) {
  if (text == "NA") return std::numeric_limits<double>::quiet_NaN();
  auto v = parse_double(text);
  if (!v) throw SchemaError(file.string() + ": bad number '" + std::string(text) + "'");
  return *v;
}

std::vector<double> numbers(std::istringstream& in, const fs::path& file) {
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(number(tok, file));
  return out;
}

std::size_t count(std::string_view text, const fs::path& file) {
  const double v = number(text, file);
  if (!(v >= 0.0) || v != std::floor(v)) throw SchemaError(file.string() + ": bad count");
  return static_cast<std::size_t>(v);
}

}  // namespace

void save_run(const fs::path& dir, const RunArtifacts& run) {
  const auto& a = run.config.architecture;
  std::ostringstream manifest;
  manifest << "schema_version=" << kRunSchemaVersion << '\n'
           << "model=" << model_name(run.config.model) << '\n'
           << "folds=" << run.folds.size() << '\n'
           << "input_dim=" << run.layout.input_dim() << '\n'
           << "steps=" << run.layout.steps << '\n'
           << "channels=" << run.layout.channels << '\n'
           << "order=" << order_name(run.layout.order) << '\n'
           << "kernel_width=" << a.kernel_width << '\n'
           << "stride=" << a.stride << '\n'
           << "hlu_alpha=" << format_number(a.hlu_alpha) << '\n'
           << "attention_hops=" << a.attention_hops << '\n'
           << "se_block=" << (a.use_se_block ? 1 : 0) << '\n'
           << "se_ratio=" << a.se_ratio << '\n';
  write_text(dir / "manifest.txt", manifest.str());
  write_text(dir / "config.txt", config_text(run.config));
  write_text(dir / "run_info.txt", "wall_seconds=" + format_number(run.wall_seconds) + "\n");

  std::string reports = report_csv_header() + "\n";
  std::vector<EvalReport> all;
  const std::string site(site_name(run.config.site));
  const std::string model(model_name(run.config.model));
  for (const auto& f : run.folds) {
    reports += report_csv_row(site, model, std::to_string(f.fold), f.report) + "\n";
    all.push_back(f.report);
  }
  if (!all.empty())
    for (const auto& row : aggregate_csv_rows(site, model, aggregate(all))) reports += row + "\n";
  write_text(dir / "reports.csv", reports);

  for (const auto& f : run.folds) {
    const fs::path fd = dir / fold_dir(f.fold);
    std::string params;
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      const auto& t = f.params[i];
      params += f.param_names[i] + " " + std::to_string(t.rank());
      for (auto d : t.shape()) params += " " + std::to_string(d);
      params += " " + join(std::vector<double>(t.values().begin(), t.values().end())) + "\n";
    }
    write_text(fd / "params.txt", params);

    std::ostringstream sc;
    sc << "feature_min=" << join(f.scaler.feature_min) << '\n'
       << "feature_max=" << join(f.scaler.feature_max) << '\n'
       << "target_min=" << format_number(f.scaler.target_min) << '\n'
       << "target_max=" << format_number(f.scaler.target_max) << '\n';
    write_text(fd / "scaler.txt", sc.str());

    std::string trace = "epoch,loss,monitor_loss\n";
    for (std::size_t e = 0; e < f.loss_trace.size(); ++e) {
      trace += std::to_string(e + 1) + "," + format_number(f.loss_trace[e]) + "," +
               (e < f.monitor_trace.size() ? format_number(f.monitor_trace[e]) : "NA") + "\n";
    }
    write_text(fd / "loss_trace.csv", trace);
  }
}

RunArtifacts load_run(const fs::path& dir) {
  const fs::path mpath = dir / "manifest.txt";
  const auto m = read_keys(mpath);
  const std::string& version = require(m, "schema_version", mpath);
  if (version != std::to_string(kRunSchemaVersion)) {
    throw SchemaError(dir.string() + " was written with schema version " + version +
                      "; this reader understands version " + std::to_string(kRunSchemaVersion));
  }
  RunArtifacts run;
  try {
    run.config = load_config(dir / "config.txt");
  } catch (const ValidationError& e) {
    throw SchemaError(std::string("config.txt: ") + e.what());
  }
  auto kind = parse_model_kind(require(m, "model", mpath));
  if (!kind || *kind != run.config.model) throw SchemaError("manifest model disagrees with config");
  run.layout.steps = count(require(m, "steps", mpath), mpath);
  run.layout.channels = count(require(m, "channels", mpath), mpath);
  auto order = parse_order(require(m, "order", mpath));
  if (!order) throw SchemaError("manifest has an unknown coordinate order");
  run.layout.order = *order;
  if (count(require(m, "input_dim", mpath), mpath) != run.layout.input_dim()) {
    throw SchemaError("manifest input_dim disagrees with steps x channels");
  }
  auto& a = run.config.architecture;
  a.kernel_width = count(require(m, "kernel_width", mpath), mpath);
  a.stride = count(require(m, "stride", mpath), mpath);
  a.hlu_alpha = number(require(m, "hlu_alpha", mpath), mpath);
  a.attention_hops = count(require(m, "attention_hops", mpath), mpath);
  a.use_se_block = require(m, "se_block", mpath) == "1";
  a.se_ratio = count(require(m, "se_ratio", mpath), mpath);
  const std::size_t folds = count(require(m, "folds", mpath), mpath);

  const auto info = read_keys(dir / "run_info.txt");
  if (auto it = info.find("wall_seconds"); it != info.end()) run.wall_seconds = number(it->second, dir);

  // Per-fold reports from reports.csv.
  std::map<std::size_t, EvalReport> reports;
  {
    const fs::path rpath = dir / "reports.csv";
    std::istringstream in(read_text(rpath));
    std::string line;
    std::getline(in, line);
    if (split_csv_line(line) != split_csv_line(report_csv_header())) {
      throw SchemaError(rpath.string() + " has an unexpected header");
    }
    while (std::getline(in, line)) {
      const auto f = split_csv_line(line);
      if (f.size() != 3 + kMetricCount) throw SchemaError(rpath.string() + ": bad row");
      if (!parse_double(f[2])) continue;  // aggregate rows
      EvalReport r;
      auto opt = [&](const std::string& s) -> std::optional<double> {
        if (s == "NA") return std::nullopt;
        return number(s, rpath);
      };
      r.mse = number(f[3], rpath);
      r.rmse = number(f[4], rpath);
      r.loss = number(f[5], rpath);
      r.mae = number(f[6], rpath);
      r.r2 = opt(f[7]);
      r.msle = opt(f[8]);
      r.medae = number(f[9], rpath);
      r.max_error = number(f[10], rpath);
      reports[count(f[2], rpath)] = r;
    }
  }

  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_directory() || name.rfind("fold_", 0) != 0) continue;
    FoldArtifact f;
    f.fold = count(name.substr(5), entry.path());
    const fs::path ppath = entry.path() / "params.txt";
    std::istringstream pin(read_text(ppath));
    std::string line;
    while (std::getline(pin, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string pname;
      std::size_t rank = 0;
      if (!(ls >> pname >> rank) || rank == 0) throw SchemaError(ppath.string() + ": bad header");
      Shape shape(rank);
      for (auto& d : shape)
        if (!(ls >> d)) throw SchemaError(ppath.string() + ": bad shape for " + pname);
      auto values = numbers(ls, ppath);
      if (values.size() != element_count(shape)) {
        throw SchemaError(ppath.string() + ": " + pname + " has " + std::to_string(values.size()) +
                          " values for shape " + to_string(shape));
      }
      f.param_names.push_back(pname);
      f.params.emplace_back(shape, std::move(values));
    }

    const fs::path spath = entry.path() / "scaler.txt";
    const auto s = read_keys(spath);
    std::istringstream mins(require(s, "feature_min", spath)), maxs(require(s, "feature_max", spath));
    f.scaler.feature_min = numbers(mins, spath);
    f.scaler.feature_max = numbers(maxs, spath);
    f.scaler.target_min = number(require(s, "target_min", spath), spath);
    f.scaler.target_max = number(require(s, "target_max", spath), spath);
    if (f.scaler.feature_min.size() != f.scaler.feature_max.size()) {
      throw SchemaError(spath.string() + ": min and max lengths differ");
    }

    const fs::path tpath = entry.path() / "loss_trace.csv";
    std::istringstream tin(read_text(tpath));
    std::getline(tin, line);
    while (std::getline(tin, line)) {
      const auto cells = split_csv_line(line);
      if (cells.size() != 3) throw SchemaError(tpath.string() + ": bad row");
      f.loss_trace.push_back(number(cells[1], tpath));
      if (cells[2] != "NA") f.monitor_trace.push_back(number(cells[2], tpath));
    }
    auto rep = reports.find(f.fold);
    if (rep == reports.end()) throw SchemaError("reports.csv has no row for fold " + std::to_string(f.fold));
    f.report = rep->second;
    run.folds.push_back(std::move(f));
  }
  std::sort(run.folds.begin(), run.folds.end(),
            [](const FoldArtifact& a, const FoldArtifact& b) { return a.fold < b.fold; });
  if (run.folds.size() != folds) {
    throw SchemaError("manifest lists " + std::to_string(folds) + " folds, found " +
                      std::to_string(run.folds.size()));
  }
  return run;
}

Model restore_model(const RunArtifacts& run, std::size_t fold,
                    std::optional<std::size_t> expected_input_dim) {
  if (expected_input_dim && *expected_input_dim != run.layout.input_dim()) {
    throw SchemaError("run was trained on " + std::to_string(run.layout.input_dim()) +
                      " inputs, caller expects " + std::to_string(*expected_input_dim));
  }
  const FoldArtifact* f = nullptr;
  for (const auto& candidate : run.folds)
    if (candidate.fold == fold) f = &candidate;
  if (f == nullptr) throw SchemaError("run has no fold " + std::to_string(fold));
  Model model(run.config.model, run.config.hp, run.layout, run.config.architecture, 0);
  const auto params = model.parameters();
  if (params.size() != f->param_names.size()) {
    throw SchemaError("stored parameters do not match the model architecture");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].name != f->param_names[i]) {
      throw SchemaError("stored parameter " + f->param_names[i] + " where model expects " +
                        params[i].name);
    }
  }
  try {
    model.restore(f->params);
  } catch (const ShapeError& e) {
    throw SchemaError(e.what());
  }
  return model;
}

}  // namespace wavecast
