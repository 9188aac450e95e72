#include "wavecast/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wavecast/errors.hpp"

namespace wavecast {

std::pair<double, double> simplex_offsets(std::size_t n, double edge) {
  if (n == 0) throw ValidationError("simplex dimension must be >= 1");
  if (!(edge > 0.0)) throw ValidationError("simplex edge must be positive");
  const double nd = static_cast<double>(n);
  const double k = edge / (nd * std::sqrt(2.0));
  const double r = std::sqrt(nd + 1.0);
  return {k * (r + nd - 1.0), k * (r - 1.0)};
}

std::vector<std::vector<double>> initial_simplex(std::span<const double> x0, double edge) {
  const auto [p, q] = simplex_offsets(x0.size(), edge);
  std::vector<std::vector<double>> v(x0.size() + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < x0.size(); ++i)
    for (std::size_t k = 0; k < x0.size(); ++k) v[i + 1][k] += (k == i ? p : q);
  return v;
}

double simplex_spread(std::span<const double> f) {
  if (f.size() < 2) throw ValidationError("spread needs n+1 >= 2 values");
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  double s = 0.0;
  for (double v : f) s += (v - mean) * (v - mean);
  return std::sqrt(s / static_cast<double>(f.size() - 1));
}

namespace {

std::string describe(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

NelderMeadResult nelder_mead(const MinObjective& f, std::span<const double> x0,
                             const NelderMeadOptions& o) {
  if (!(o.eps > 0.0)) throw ValidationError("eps must be positive");
  const std::size_t n = x0.size();
  if (o.max_evaluations < n + 1) {
    throw ValidationError("Nelder-Mead needs at least " + std::to_string(n + 1) +
                          " evaluations for the initial simplex");
  }
  auto simplex = initial_simplex(x0, o.edge);
  std::vector<double> fv(n + 1);
  NelderMeadResult res;

  auto eval = [&](const std::vector<double>& x, const char* what) {
    const double v = f(x);
    ++res.evaluations;
    if (!std::isfinite(v)) {
      throw NumericalAbort(std::string("non-finite objective at ") + what + " vertex " +
                           describe(x));
    }
    return v;
  };
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i], "initial");

  std::vector<std::size_t> order(n + 1);
  auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] + t * (b[k] - a[k]);
    return out;
  };

  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    res.spread = simplex_spread(fv);
    if (res.spread < o.eps) {
      res.converged = true;
      break;
    }
    if (res.iterations >= o.max_iter) break;
    if (o.max_evaluations < res.evaluations + n + 2) break;
    ++res.iterations;

    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) c[k] += simplex[order[i]][k] / static_cast<double>(n);

    auto xr = combine(c, simplex[worst], -o.reflection);
    const double fr = eval(xr, "reflected");
    if (fr < fv[best]) {
      auto xe = combine(c, xr, o.expansion);
      const double fe = eval(xe, "expanded");
      if (fe < fr) {
        simplex[worst] = std::move(xe);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(xr);
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = std::move(xr);
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    auto xc = outside ? combine(c, xr, o.contraction) : combine(c, simplex[worst], o.contraction);
    const double fc = eval(xc, "contracted");
    if (fc < (outside ? fr : fv[worst])) {
      simplex[worst] = std::move(xc);
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      simplex[i] = combine(simplex[best], simplex[i], o.shrink);
      fv[i] = eval(simplex[i], "shrunk");
    }
  }
  const std::size_t best = order.front();
  res.x_best = simplex[best];
  res.f_best = fv[best];
  return res;
}

}  // namespace wavecast
