#include "wavecast/trace.hpp"

#include <ostream>
#include <sstream>

#include "wavecast/metrics.hpp"

namespace wavecast {

bool Trace::best_is_monotone() const noexcept {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].best_so_far < rows[i - 1].best_so_far) return false;
  return true;
}

void Trace::append(const Trace& other) {
  if (param_names.empty()) param_names = other.param_names;
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

void Trace::write_csv(std::ostream& out) const {
  out << "iteration,eval_id";
  for (const auto& n : param_names) out << ',' << n;
  out << ",score,best_so_far";
  for (const auto& n : param_names) out << ",sigma_" << n;
  out << '\n';
  for (const auto& r : rows) {
    out << r.iteration << ',' << r.eval_id;
    for (double p : r.params) out << ',' << format_number(p);
    out << ',' << format_number(r.score) << ',' << format_number(r.best_so_far);
    for (std::size_t i = 0; i < param_names.size(); ++i)
      out << ',' << format_number(i < r.sigma.size() ? r.sigma[i] : std::nullopt);
    out << '\n';
  }
}

std::string Trace::to_csv() const {
  std::ostringstream s;
  write_csv(s);
  return s.str();
}

}  // namespace wavecast
