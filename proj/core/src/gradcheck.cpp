#include "wavecast/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavecast/errors.hpp"

namespace wavecast {

std::string GradCheckResult::describe() const {
  std::ostringstream out;
  out << (passed ? "ok" : "MISMATCH") << " over " << checked << " entries; worst index "
      << worst_index << " analytic=" << worst_analytic << " numeric=" << worst_numeric
      << " ratio=" << worst_ratio;
  return out.str();
}

Tensor numeric_gradient(const std::function<double(const Tensor&)>& f, const Tensor& x,
                        double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("finite-difference epsilon must be positive");
  Tensor probe = x;
  Tensor grad(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + epsilon;
    const double up = f(probe);
    probe[i] = orig - epsilon;
    const double down = f(probe);
    probe[i] = orig;
    grad[i] = (up - down) / (2.0 * epsilon);
  }
  return grad;
}

GradCheckResult check_gradient(const std::function<double(const Tensor&)>& f,
                               const Tensor& x, const Tensor& analytic,
                               const GradCheckConfig& config) {
  if (!(config.rel_tol > 0.0)) throw DomainError("gradient check rel_tol must be positive");
  if (analytic.shape() != x.shape()) {
    throw ShapeError("gradient shape " + to_string(analytic.shape()) +
                     " does not match parameter shape " + to_string(x.shape()));
  }
  const Tensor numeric = numeric_gradient(f, x, config.epsilon);
  GradCheckResult result;
  result.checked = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ga = analytic[i];
    const double gn = numeric[i];
    const double bound = config.rel_tol * std::max(std::abs(ga), std::abs(gn)) + config.abs_tol;
    double ratio = std::abs(ga - gn) / bound;
    if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();
    if (i == 0 || ratio > result.worst_ratio) {
      result.worst_ratio = ratio;
      result.worst_index = i;
      result.worst_analytic = ga;
      result.worst_numeric = gn;
    }
  }
  result.passed = result.worst_ratio <= 1.0;
  return result;
}

void merge_into(GradCheckResult& total, const GradCheckResult& part) {
  if (total.checked == 0 || part.worst_ratio > total.worst_ratio) {
    total.worst_ratio = part.worst_ratio;
    total.worst_index = part.worst_index;
    total.worst_analytic = part.worst_analytic;
    total.worst_numeric = part.worst_numeric;
  }
  total.checked += part.checked;
  total.passed = total.passed && part.passed;
}

}  // namespace wavecast
