#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wavecast {

struct TraceRow {
  std::size_t iteration = 0;
  std::size_t eval_id = 0;
  std::vector<double> params;
  double score = 0.0;
  double best_so_far = 0.0;
  /// Step size per parameter; empty where a coordinate was not mutated by an EA.
  std::vector<std::optional<double>> sigma;
};

/// Every evaluation an optimizer made, in order.
struct Trace {
  std::vector<std::string> param_names;
  std::vector<TraceRow> rows;

  bool best_is_monotone() const noexcept;
  void append(const Trace& other);

  // iteration,eval_id,<params>,score,best_so_far,sigma_<params>
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

}  // namespace wavecast
