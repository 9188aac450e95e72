#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wavecast {

/// Comma-separated fields of one line; no quoting. Surrounding blanks and a
/// trailing '\r' are stripped from every field.
std::vector<std::string> split_csv_line(std::string_view line);

/// Whole-string decimal parse ('.' separator); empty on any trailing text.
std::optional<double> parse_double(std::string_view text) noexcept;

std::string read_text(const std::filesystem::path& path);
/// Writes via a temporary file and rename.
void write_text(const std::filesystem::path& path, std::string_view text);

/// Rows of a CSV file that has a header line naming `required` columns.
/// Throws IoError / ValidationError naming the file and line.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
};
CsvTable read_numeric_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& required);

}  // namespace wavecast
