#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavecast/partition.hpp"

namespace wavecast {

enum class Site { adelaide, perth, sydney, tasmania };

std::string_view site_name(Site site) noexcept;
std::optional<Site> parse_site(std::string_view name) noexcept;

inline constexpr std::size_t kWecCount = 16;
inline constexpr std::size_t kCoordinateColumns = 2 * kWecCount;         // 32
inline constexpr std::size_t kDatasetColumns = kCoordinateColumns + kWecCount + 1;  // 49
inline constexpr std::size_t kExpectedRows = 72000;
inline constexpr double kCoordinateMax = 566.0;

/// One site's layouts: X1,Y1,...,X16,Y16, P1..P16, total power.
struct WecDataset {
  Site site = Site::sydney;
  std::size_t rows = 0;
  /// Row-major rows x 49.
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const { return values[row * kDatasetColumns + col]; }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * kDatasetColumns, kDatasetColumns};
  }
  void append(std::span<const double> row);

  /// The 32 coordinates as features and total power as target.
  RegressionData regression() const;
};

struct Issue {
  enum class Severity { warning, error };
  Severity severity = Severity::error;
  /// 1-based file line; 0 for file-level issues.
  std::size_t line = 0;
  /// 1-based column; 0 when not tied to a column.
  std::size_t column = 0;
  std::string message;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const noexcept;
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;
  void add(Issue::Severity s, std::size_t line, std::size_t column, std::string message);
  std::string summary(std::size_t max_lines = 20) const;
};

struct LoadResult {
  WecDataset dataset;
  ValidationReport report;
};

/// Reads every row, collecting every violation instead of stopping at the
/// first. Rows with the wrong width or unparsable cells are reported and
/// skipped. Throws IoError only when the file cannot be read.
LoadResult load_csv(const std::filesystem::path& path, Site site);

/// Value checks on parsed rows; `lines[r]` is the file line of row r.
void validate_rows(const WecDataset& data, ValidationReport& report,
                   std::span<const std::size_t> lines = {});

/// load_csv, throwing ValidationError with the summary if any error was found.
WecDataset load_dataset(const std::filesystem::path& path, Site site);

std::string dataset_header();
void write_dataset_csv(const std::filesystem::path& path, const WecDataset& data);

}  // namespace wavecast
