#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavecast {

/// Regression scores for one model / fold / site.
///
/// `r2` is empty when the targets have zero variance and `msle` is empty when
/// any value is <= -1; both are reported as missing rather than NaN.
struct EvalReport {
  double mse = 0.0;
  double rmse = 0.0;
  double loss = 0.0;  // mse / 2
  double mae = 0.0;
  std::optional<double> r2;
  std::optional<double> msle;
  double medae = 0.0;      // median |y - y_hat|
  double max_error = 0.0;  // max |y - y_hat|
  std::size_t n = 0;
};

enum class Metric { mse, rmse, loss, mae, r2, msle, medae, max_error };
inline constexpr std::size_t kMetricCount = 8;

const std::array<Metric, kMetricCount>& all_metrics();
std::string_view metric_name(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;
std::optional<double> metric_value(const EvalReport& report, Metric m) noexcept;

/// Requires equal lengths >= 2; throws ShapeError / ValidationError otherwise.
EvalReport evaluate(std::span<const double> y, std::span<const double> y_hat);

struct MetricSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;  // population
  std::size_t count = 0;
};

struct AggregateReport {
  /// Empty entry when no report defines the metric.
  std::array<std::optional<MetricSummary>, kMetricCount> summaries;
  std::size_t reports = 0;

  const std::optional<MetricSummary>& operator[](Metric m) const noexcept {
    return summaries[static_cast<std::size_t>(m)];
  }
};

/// Mean / min / max / population std of each metric across reports.
AggregateReport aggregate(std::span<const EvalReport> reports);

// CSV: site,model,fold,mse,rmse,loss,mae,r2,msle,medae,max_error
std::string report_csv_header();
std::string report_csv_row(std::string_view site, std::string_view model, std::string_view fold,
                           const EvalReport& report);
/// Four rows labelled mean, min, max, std in the fold column.
std::vector<std::string> aggregate_csv_rows(std::string_view site, std::string_view model,
                                            const AggregateReport& agg);

/// Shortest decimal text that parses back to the same double; "NA" for empty.
std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

}  // namespace wavecast
