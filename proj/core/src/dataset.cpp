#include "wavecast/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "wavecast/csv.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/metrics.hpp"

namespace wavecast {

namespace {

constexpr std::array<std::string_view, 4> kSites{"Adelaide", "Perth", "Sydney", "Tasmania"};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

}  // namespace

std::string_view site_name(Site site) noexcept { return kSites[static_cast<std::size_t>(site)]; }

std::optional<Site> parse_site(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kSites.size(); ++i)
    if (iequals(kSites[i], name)) return static_cast<Site>(i);
  return std::nullopt;
}

void WecDataset::append(std::span<const double> r) {
  if (r.size() != kDatasetColumns) throw ShapeError("dataset rows have 49 columns");
  values.insert(values.end(), r.begin(), r.end());
  ++rows;
}

RegressionData WecDataset::regression() const {
  RegressionData d{Tensor({rows, kCoordinateColumns}), std::vector<double>(rows)};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < kCoordinateColumns; ++c) d.features(r, c) = at(r, c);
    d.targets[r] = at(r, kDatasetColumns - 1);
  }
  return d;
}

std::string Issue::describe() const {
  std::string s = severity == Severity::error ? "error" : "warning";
  if (line > 0) s += " line " + std::to_string(line);
  if (column > 0) s += " column " + std::to_string(column);
  return s + ": " + message;
}

bool ValidationReport::ok() const noexcept { return error_count() == 0; }

std::size_t ValidationReport::error_count() const noexcept {
  std::size_t n = 0;
  for (const auto& i : issues) n += i.severity == Issue::Severity::error;
  return n;
}

std::size_t ValidationReport::warning_count() const noexcept {
  return issues.size() - error_count();
}

void ValidationReport::add(Issue::Severity s, std::size_t line, std::size_t column,
                           std::string message) {
  issues.push_back(Issue{s, line, column, std::move(message)});
}

std::string ValidationReport::summary(std::size_t max_lines) const {
  std::ostringstream out;
  out << error_count() << " error(s), " << warning_count() << " warning(s)\n";
  for (std::size_t i = 0; i < issues.size() && i < max_lines; ++i)
    out << "  " << issues[i].describe() << '\n';
  if (issues.size() > max_lines) out << "  ... " << issues.size() - max_lines << " more\n";
  return out.str();
}

void validate_rows(const WecDataset& data, ValidationReport& report,
                   std::span<const std::size_t> lines) {
  using S = Issue::Severity;
  for (std::size_t r = 0; r < data.rows; ++r) {
    const std::size_t line = r < lines.size() ? lines[r] : r + 1;
    for (std::size_t c = 0; c < kDatasetColumns; ++c) {
      if (!std::isfinite(data.at(r, c))) report.add(S::error, line, c + 1, "value is not finite");
    }
    for (std::size_t c = 0; c < kCoordinateColumns; ++c) {
      const double v = data.at(r, c);
      if (std::isfinite(v) && (v < 0.0 || v > kCoordinateMax)) {
        report.add(S::error, line, c + 1,
                   "coordinate " + format_number(v) + " outside [0, 566]");
      }
    }
    double sum = 0.0;
    for (std::size_t c = kCoordinateColumns; c < kDatasetColumns - 1; ++c) sum += data.at(r, c);
    const double total = data.at(r, kDatasetColumns - 1);
    if (std::abs(total - sum) > 1e-6 * std::max(std::abs(total), std::abs(sum))) {
      report.add(S::error, line, kDatasetColumns,
                 "total power " + format_number(total) + " differs from the sum of per-WEC powers " +
                     format_number(sum));
    }
  }
  if (data.rows != kExpectedRows) {
    report.add(S::warning, 0, 0,
               std::to_string(data.rows) + " rows, expected " + std::to_string(kExpectedRows));
  }
}

LoadResult load_csv(const std::filesystem::path& path, Site site) {
  using S = Issue::Severity;
  std::istringstream in(read_text(path));
  LoadResult out;
  out.dataset.site = site;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  std::vector<double> row(kDatasetColumns);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (first) {
      first = false;
      bool numeric = true;
      for (const auto& f : fields) numeric = numeric && parse_double(f).has_value();
      if (!numeric) continue;  // header row
    }
    if (fields.size() != kDatasetColumns) {
      out.report.add(S::error, line_no, 0,
                     "expected 49 columns, got " + std::to_string(fields.size()));
      continue;
    }
    bool good = true;
    for (std::size_t c = 0; c < kDatasetColumns; ++c) {
      const auto v = parse_double(fields[c]);
      if (!v) {
        out.report.add(S::error, line_no, c + 1, "not a number: '" + fields[c] + "'");
        good = false;
      } else {
        row[c] = *v;
      }
    }
    if (!good) continue;
    out.dataset.append(row);
    lines.push_back(line_no);
  }
  if (line_no == 0) out.report.add(S::error, 0, 0, "file is empty");
  validate_rows(out.dataset, out.report, lines);
  return out;
}

WecDataset load_dataset(const std::filesystem::path& path, Site site) {
  auto res = load_csv(path, site);
  if (!res.report.ok()) {
    throw ValidationError(path.string() + ": " + res.report.summary());
  }
  return std::move(res.dataset);
}

std::string dataset_header() {
  std::string h;
  for (std::size_t i = 1; i <= kWecCount; ++i)
    h += "X" + std::to_string(i) + ",Y" + std::to_string(i) + ",";
  for (std::size_t i = 1; i <= kWecCount; ++i) h += "Power" + std::to_string(i) + ",";
  return h + "Total_Power";
}

void write_dataset_csv(const std::filesystem::path& path, const WecDataset& data) {
  std::string text = dataset_header() + "\n";
  for (std::size_t r = 0; r < data.rows; ++r) {
    for (std::size_t c = 0; c < kDatasetColumns; ++c) {
      if (c) text += ',';
      text += format_number(data.at(r, c));
    }
    text += '\n';
  }
  write_text(path, text);
}

}  // namespace wavecast
