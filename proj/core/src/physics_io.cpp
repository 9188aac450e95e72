#include "wavecast/physics_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wavecast/csv.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/metrics.hpp"

namespace wavecast {

std::vector<SeaState> read_climate_csv(const std::filesystem::path& path) {
  const auto t = read_numeric_csv(path, {"hs_m", "tp_s", "beta_rad", "occurrence"});
  const auto hs = t.column("hs_m"), tp = t.column("tp_s"), beta = t.column("beta_rad"),
             occ = t.column("occurrence");
  std::vector<SeaState> out;
  for (const auto& r : t.rows) out.push_back(SeaState{r[hs], r[tp], r[beta], r[occ]});
  validate_climate(out);
  return out;
}

void write_climate_csv(const std::filesystem::path& path, const std::vector<SeaState>& climate) {
  std::string text = "hs_m,tp_s,beta_rad,occurrence\n";
  for (const auto& s : climate) {
    text += format_number(s.hs) + "," + format_number(s.tp) + "," + format_number(s.beta) + "," +
            format_number(s.occurrence) + "\n";
  }
  write_text(path, text);
}

namespace {

std::size_t index_value(double v, const std::filesystem::path& path) {
  if (!(v >= 0.0) || v != std::floor(v)) {
    throw ValidationError(path.string() + ": row/col must be non-negative integers");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::shared_ptr<TabulatedHydro> read_coefficient_csv(const std::filesystem::path& radiation,
                                                     const std::filesystem::path& excitation) {
  const std::vector<std::string> cols{"omega", "row", "col", "re", "im"};
  const auto rad = read_numeric_csv(radiation, cols);
  const auto exc = read_numeric_csv(excitation, cols);

  std::size_t n = 0;
  for (const auto& r : exc.rows) n = std::max(n, index_value(r[exc.column("row")], excitation) + 1);
  if (n == 0) throw ValidationError(excitation.string() + " has no rows");

  std::map<double, TabulatedHydro::Entry> entries;
  auto entry = [&](double omega) -> TabulatedHydro::Entry& {
    auto it = entries.find(omega);
    if (it == entries.end()) {
      const auto d = static_cast<Eigen::Index>(n);
      it = entries
               .emplace(omega, TabulatedHydro::Entry{omega, RMatrix::Zero(d, d), RMatrix::Zero(d, d),
                                                     CVector::Zero(d)})
               .first;
    }
    return it->second;
  };
  for (const auto& r : rad.rows) {
    const auto i = index_value(r[rad.column("row")], radiation);
    const auto j = index_value(r[rad.column("col")], radiation);
    if (i >= n || j >= n) throw ValidationError(radiation.string() + ": index beyond excitation size");
    auto& e = entry(r[rad.column("omega")]);
    e.added_mass(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[rad.column("re")];
    e.damping(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[rad.column("im")];
  }
  for (const auto& r : exc.rows) {
    const auto i = index_value(r[exc.column("row")], excitation);
    entry(r[exc.column("omega")]).excitation(static_cast<Eigen::Index>(i)) =
        std::complex<double>(r[exc.column("re")], r[exc.column("im")]);
  }
  std::vector<TabulatedHydro::Entry> list;
  for (auto& [w, e] : entries) list.push_back(std::move(e));
  return std::make_shared<TabulatedHydro>(std::move(list));
}

void write_coefficient_csv(const std::filesystem::path& radiation,
                           const std::filesystem::path& excitation, const TabulatedHydro& table) {
  std::string rad = "omega,row,col,re,im\n";
  std::string exc = rad;
  for (const auto& e : table.entries()) {
    const std::string w = format_number(e.omega);
    for (Eigen::Index i = 0; i < e.added_mass.rows(); ++i) {
      for (Eigen::Index j = 0; j < e.added_mass.cols(); ++j) {
        if (e.added_mass(i, j) == 0.0 && e.damping(i, j) == 0.0) continue;
        rad += w + "," + std::to_string(i) + "," + std::to_string(j) + "," +
               format_number(e.added_mass(i, j)) + "," + format_number(e.damping(i, j)) + "\n";
      }
      exc += w + "," + std::to_string(i) + ",0," + format_number(e.excitation(i).real()) + "," +
             format_number(e.excitation(i).imag()) + "\n";
    }
  }
  write_text(radiation, rad);
  write_text(excitation, exc);
}

std::string landscape_csv(const Landscape& landscape) {
  std::string text = "x_m,y_m,power_w,feasible\n";
  for (const auto& c : landscape.cells) {
    text += format_number(c.x) + "," + format_number(c.y) + "," + format_number(c.power) + "," +
            (c.feasible ? "1" : "0") + "\n";
  }
  return text;
}

void write_landscape_csv(const std::filesystem::path& path, const Landscape& landscape) {
  write_text(path, landscape_csv(landscape));
}

}  // namespace wavecast
