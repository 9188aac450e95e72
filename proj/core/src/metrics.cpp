#include "wavecast/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "wavecast/errors.hpp"

namespace wavecast {

namespace {

constexpr std::array<std::string_view, kMetricCount> kNames{
    "mse", "rmse", "loss", "mae", "r2", "msle", "medae", "max_error"};

}  // namespace

const std::array<Metric, kMetricCount>& all_metrics() {
  static constexpr std::array<Metric, kMetricCount> all{
      Metric::mse, Metric::rmse, Metric::loss, Metric::mae,
      Metric::r2, Metric::msle, Metric::medae, Metric::max_error};
  return all;
}

std::string_view metric_name(Metric m) noexcept { return kNames[static_cast<std::size_t>(m)]; }

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kMetricCount; ++i)
    if (kNames[i] == name) return static_cast<Metric>(i);
  return std::nullopt;
}

std::optional<double> metric_value(const EvalReport& r, Metric m) noexcept {
  switch (m) {
    case Metric::mse: return r.mse;
    case Metric::rmse: return r.rmse;
    case Metric::loss: return r.loss;
    case Metric::mae: return r.mae;
    case Metric::r2: return r.r2;
    case Metric::msle: return r.msle;
    case Metric::medae: return r.medae;
    case Metric::max_error: return r.max_error;
  }
  return std::nullopt;
}

EvalReport evaluate(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size()) {
    throw ShapeError("evaluate: " + std::to_string(y.size()) + " targets vs " +
                     std::to_string(y_hat.size()) + " predictions");
  }
  const std::size_t n = y.size();
  if (n < 2) throw ValidationError("evaluate needs at least 2 samples");

  EvalReport r;
  r.n = n;
  const double inv_n = 1.0 / static_cast<double>(n);
  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y *= inv_n;

  std::vector<double> abs_res(n);
  double ss_res = 0.0, ss_tot = 0.0, sum_abs = 0.0, sum_log = 0.0;
  bool log_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - y_hat[i];
    abs_res[i] = std::abs(e);
    ss_res += e * e;
    sum_abs += abs_res[i];
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    if (y[i] <= -1.0 || y_hat[i] <= -1.0) {
      log_ok = false;
    } else {
      const double d = std::log1p(y[i]) - std::log1p(y_hat[i]);
      sum_log += d * d;
    }
  }
  r.mse = ss_res * inv_n;
  r.rmse = std::sqrt(r.mse);
  r.loss = 0.5 * r.mse;
  r.mae = sum_abs * inv_n;
  if (ss_tot > 0.0) r.r2 = 1.0 - ss_res / ss_tot;
  if (log_ok) r.msle = sum_log * inv_n;
  r.max_error = *std::max_element(abs_res.begin(), abs_res.end());
  const std::size_t mid = n / 2;
  std::nth_element(abs_res.begin(), abs_res.begin() + static_cast<std::ptrdiff_t>(mid),
                   abs_res.end());
  const double upper = abs_res[mid];
  if (n % 2 == 1) {
    r.medae = upper;
  } else {
    const double lower =
        *std::max_element(abs_res.begin(), abs_res.begin() + static_cast<std::ptrdiff_t>(mid));
    r.medae = 0.5 * (lower + upper);
  }
  return r;
}

AggregateReport aggregate(std::span<const EvalReport> reports) {
  if (reports.empty()) throw ValidationError("aggregate needs at least one report");
  AggregateReport agg;
  agg.reports = reports.size();
  for (Metric m : all_metrics()) {
    std::vector<double> xs;
    for (const auto& r : reports)
      if (auto v = metric_value(r, m)) xs.push_back(*v);
    if (xs.empty()) continue;
    MetricSummary s;
    s.count = xs.size();
    s.min = *std::min_element(xs.begin(), xs.end());
    s.max = *std::max_element(xs.begin(), xs.end());
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    // Rounding can push the mean of identical values a hair outside [min,max].
    s.mean = std::clamp(s.mean, s.min, s.max);
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(var / static_cast<double>(xs.size()));
    agg.summaries[static_cast<std::size_t>(m)] = s;
  }
  return agg;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string("NA");
}

std::string report_csv_header() {
  std::string h = "site,model,fold";
  for (auto name : kNames) {
    h += ',';
    h += name;
  }
  return h;
}

std::string report_csv_row(std::string_view site, std::string_view model, std::string_view fold,
                           const EvalReport& report) {
  std::string row;
  row.append(site).append(",").append(model).append(",").append(fold);
  for (Metric m : all_metrics()) row += "," + format_number(metric_value(report, m));
  return row;
}

std::vector<std::string> aggregate_csv_rows(std::string_view site, std::string_view model,
                                            const AggregateReport& agg) {
  std::vector<std::string> rows;
  constexpr std::array<std::string_view, 4> labels{"mean", "min", "max", "std"};
  for (std::size_t k = 0; k < labels.size(); ++k) {
    std::string row;
    row.append(site).append(",").append(model).append(",").append(labels[k]);
    for (Metric m : all_metrics()) {
      const auto& s = agg[m];
      std::optional<double> v;
      if (s) v = k == 0 ? s->mean : k == 1 ? s->min : k == 2 ? s->max : s->std;
      row += "," + format_number(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wavecast
