#include "wavecast/config.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "wavecast/csv.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/metrics.hpp"

namespace wavecast {

std::string_view order_name(CoordinateOrder order) noexcept {
  return order == CoordinateOrder::interleaved ? "interleaved" : "blocked";
}

std::optional<CoordinateOrder> parse_order(std::string_view name) noexcept {
  if (name == "interleaved") return CoordinateOrder::interleaved;
  if (name == "blocked") return CoordinateOrder::blocked;
  return std::nullopt;
}

void ExperimentConfig::validate(bool check_files) const {
  hp.validate();
  if (epochs == 0) throw ValidationError("epochs must be positive");
  if (cv == CvMode::kfold_10 && folds < 2) throw ValidationError("folds must be at least 2");
  if (jobs == 0) throw ValidationError("jobs must be positive");
  if (architecture.kernel_width == 0 || architecture.stride == 0 ||
      architecture.attention_hops == 0 || architecture.se_ratio == 0) {
    throw ValidationError("architecture widths must be positive");
  }
  if (check_files) {
    if (data.empty()) throw ValidationError("no data file configured");
    if (!std::filesystem::exists(data)) throw ValidationError("data file " + data.string() + " does not exist");
  }
}

CvOptions ExperimentConfig::cv_options() const {
  CvOptions o;
  o.mode = cv;
  o.folds = folds;
  o.train.epochs = epochs;
  o.train.patience = patience;
  o.layout.order = order;
  o.architecture = architecture;
  o.jobs = jobs;
  return o;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_unsigned(std::string_view v, const std::string& where) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(where + ": expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view v, const std::string& where) {
  auto d = parse_double(v);
  if (!d) throw ValidationError(where + ": expected a number, got '" + std::string(v) + "'");
  return *d;
}

bool parse_bool(std::string_view v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError(where + ": expected true or false, got '" + std::string(v) + "'");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, ExperimentConfig c) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto hpv = c.hp.to_vector();
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ValidationError(where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    bool matched = false;
    const auto& names = HyperParams::field_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == key) {
        hpv[i] = parse_real(value, where);
        matched = true;
      }
    }
    if (matched) continue;

    if (key == "site") {
      auto s = parse_site(value);
      if (!s) throw ValidationError(where + ": unknown site '" + std::string(value) + "'");
      c.site = *s;
    } else if (key == "model") {
      auto m = parse_model_kind(value);
      if (!m) throw ValidationError(where + ": unknown model '" + std::string(value) + "'");
      c.model = *m;
    } else if (key == "cv") {
      auto m = parse_cv_mode(value);
      if (!m) throw ValidationError(where + ": unknown cv mode '" + std::string(value) + "'");
      c.cv = *m;
    } else if (key == "order") {
      auto o = parse_order(value);
      if (!o) throw ValidationError(where + ": unknown order '" + std::string(value) + "'");
      c.order = *o;
    } else if (key == "data") {
      c.data = std::string(value);
    } else if (key == "output") {
      c.output = std::string(value);
    } else if (key == "seed") {
      c.seed = parse_unsigned<std::uint64_t>(value, where);
    } else if (key == "epochs") {
      c.epochs = parse_unsigned<std::size_t>(value, where);
    } else if (key == "patience") {
      c.patience = parse_unsigned<std::size_t>(value, where);
    } else if (key == "folds") {
      c.folds = parse_unsigned<std::size_t>(value, where);
    } else if (key == "jobs") {
      c.jobs = parse_unsigned<std::size_t>(value, where);
    } else if (key == "kernel_width") {
      c.architecture.kernel_width = parse_unsigned<std::size_t>(value, where);
    } else if (key == "attention_hops") {
      c.architecture.attention_hops = parse_unsigned<std::size_t>(value, where);
    } else if (key == "se_block") {
      c.architecture.use_se_block = parse_bool(value, where);
    } else {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
  c.hp = HyperParams::from_vector(hpv);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path));
}

std::string config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "site = " << site_name(c.site) << '\n'
      << "model = " << model_name(c.model) << '\n'
      << "data = " << c.data.string() << '\n'
      << "output = " << c.output.string() << '\n'
      << "seed = " << c.seed << '\n'
      << "epochs = " << c.epochs << '\n'
      << "patience = " << c.patience << '\n'
      << "cv = " << cv_mode_name(c.cv) << '\n'
      << "folds = " << c.folds << '\n'
      << "jobs = " << c.jobs << '\n'
      << "order = " << order_name(c.order) << '\n'
      << "kernel_width = " << c.architecture.kernel_width << '\n'
      << "attention_hops = " << c.architecture.attention_hops << '\n'
      << "se_block = " << (c.architecture.use_se_block ? "true" : "false") << '\n';
  const auto v = c.hp.to_vector();
  const auto& names = HyperParams::field_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << names[i] << " = " << format_number(v[i]) << '\n';
  return out.str();
}

}  // namespace wavecast
