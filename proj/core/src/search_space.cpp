#include "wavecast/search_space.hpp"

#include <algorithm>
#include <cmath>

#include "wavecast/errors.hpp"
#include "wavecast/hyperparams.hpp"

namespace wavecast {

Domain Domain::grid(std::string name, std::vector<double> values) {
  if (values.empty()) throw ValidationError("grid for " + name + " is empty");
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("grid for " + name + " has a non-finite value");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Domain d;
  d.name_ = std::move(name);
  d.lo_ = values.front();
  d.hi_ = values.back();
  d.log_ = d.lo_ > 0.0;
  d.grid_ = std::move(values);
  return d;
}

Domain Domain::continuous(std::string name, double lo, double hi, bool log_scale) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("interval for " + name + " needs finite lo < hi");
  }
  if (log_scale && lo <= 0.0) throw ValidationError("log interval for " + name + " needs lo > 0");
  Domain d;
  d.name_ = std::move(name);
  d.lo_ = lo;
  d.hi_ = hi;
  d.log_ = log_scale;
  return d;
}

bool Domain::contains(double v) const noexcept {
  if (!is_grid()) return v >= lo_ && v <= hi_;
  return std::find(grid_.begin(), grid_.end(), v) != grid_.end();
}

double Domain::to_search(double v) const {
  if (!log_) return v;
  if (v <= 0.0) throw DomainError(name_ + ": log-scaled value must be positive");
  return is_grid() ? std::log2(v) : std::log10(v);
}

double Domain::from_search(double s) const {
  if (!log_) return project(s);
  return project(is_grid() ? std::exp2(s) : std::pow(10.0, s));
}

double Domain::project(double v) const {
  if (std::isnan(v)) throw DomainError(name_ + ": cannot project NaN");
  if (!is_grid()) return std::clamp(v, lo_, hi_);
  if (v <= lo_) return lo_;
  if (v >= hi_) return hi_;
  const double s = to_search(v);
  double best = grid_.front();
  double best_gap = std::abs(to_search(best) - s);
  for (double g : grid_) {
    const double gap = std::abs(to_search(g) - s);
    if (gap < best_gap) {
      best = g;
      best_gap = gap;
    }
  }
  return best;
}

double Domain::sample(Rng& rng) const {
  if (is_grid()) return grid_[rng.index(grid_.size())];
  return from_search(rng.uniform(search_lo(), search_hi()));
}

SearchSpace::SearchSpace(std::vector<Domain> domains) : domains_(std::move(domains)) {
  for (std::size_t i = 0; i < domains_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (domains_[i].name() == domains_[j].name())
        throw ValidationError("duplicate domain " + domains_[i].name());
}

std::optional<std::size_t> SearchSpace::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < domains_.size(); ++i)
    if (domains_[i].name() == name) return i;
  return std::nullopt;
}

std::vector<std::string> SearchSpace::names() const {
  std::vector<std::string> out;
  for (const auto& d : domains_) out.push_back(d.name());
  return out;
}

bool SearchSpace::all_continuous() const noexcept {
  return std::none_of(domains_.begin(), domains_.end(), [](const Domain& d) { return d.is_grid(); });
}

std::vector<double> SearchSpace::project(std::span<const double> point) const {
  if (point.size() != size()) {
    throw ShapeError("point has " + std::to_string(point.size()) + " coordinates, space has " +
                     std::to_string(size()));
  }
  std::vector<double> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out[i] = domains_[i].project(point[i]);
  return out;
}

bool SearchSpace::contains(std::span<const double> point) const {
  if (point.size() != size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!domains_[i].contains(point[i])) return false;
  return true;
}

std::vector<double> SearchSpace::sample(Rng& rng) const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& d : domains_) out.push_back(d.sample(rng));
  return out;
}

namespace {

std::vector<double> powers_of_two(int lo_exp, int hi_exp) {
  std::vector<double> v;
  for (int e = lo_exp; e <= hi_exp; ++e) v.push_back(std::exp2(e));
  return v;
}

}  // namespace

SearchSpace SearchSpace::hyperparameters() {
  const auto& names = HyperParams::field_names();
  auto name = [&](std::size_t i) { return std::string(names[i]); };
  std::vector<Domain> d;
  for (std::size_t i = kCnf1; i <= kCnf4; ++i) d.push_back(Domain::grid(name(i), powers_of_two(2, 9)));
  d.push_back(Domain::grid(name(kNhu1), powers_of_two(2, 7)));
  d.push_back(Domain::grid(name(kNhu2), powers_of_two(2, 7)));
  d.push_back(Domain::continuous(name(kPdo1), 0.0, 0.5));
  d.push_back(Domain::continuous(name(kPdo2), 0.0, 0.5));
  d.push_back(Domain::grid(name(kBatchSize), powers_of_two(5, 10)));
  d.push_back(Domain::grid(name(kLearningRate), {1e-2, 1e-3, 1e-4, 1e-5}));
  d.push_back(Domain::grid(name(kAttentionDim), powers_of_two(2, 7)));
  d.push_back(Domain::continuous(name(kL2Reg), 1e-6, 1e-2, true));
  return SearchSpace(std::move(d));
}

SearchSpace SearchSpace::box(std::size_t n, double lo, double hi) {
  std::vector<Domain> d;
  for (std::size_t i = 0; i < n; ++i)
    d.push_back(Domain::continuous("x" + std::to_string(i + 1), lo, hi));
  return SearchSpace(std::move(d));
}

SeparableQuadratic::SeparableQuadratic(SearchSpace space, std::vector<double> target)
    : space_(std::move(space)), target_(std::move(target)) {
  if (!space_.contains(target_)) throw ValidationError("target lies outside the search space");
}

double SeparableQuadratic::operator()(std::span<const double> point) const {
  if (point.size() != space_.size()) throw ShapeError("objective point has the wrong size");
  double s = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const Domain& d = space_[i];
    const double z = (d.to_search(point[i]) - d.to_search(target_[i])) / d.search_range();
    s += z * z;
  }
  return 1.0 - s / static_cast<double>(point.size());
}

}  // namespace wavecast
