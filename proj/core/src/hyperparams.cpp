#include "wavecast/hyperparams.hpp"

#include <cmath>
#include <string>

#include "wavecast/errors.hpp"

namespace wavecast {

void HyperParams::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError("hyperparameter " + what); };
  for (std::size_t i = 0; i < cnf.size(); ++i)
    if (cnf[i] == 0) fail("CNF_" + std::to_string(i + 1) + " must be a positive integer");
  for (std::size_t i = 0; i < nhu.size(); ++i)
    if (nhu[i] == 0) fail("NHU_" + std::to_string(i + 1) + " must be a positive integer");
  for (std::size_t i = 0; i < pdo.size(); ++i)
    if (!(pdo[i] >= 0.0 && pdo[i] < 1.0))
      fail("PDO_" + std::to_string(i + 1) + " must lie in [0,1)");
  if (batch_size == 0) fail("BS must be a positive integer");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("LR must be positive");
  if (attention_dim == 0) fail("AT must be a positive integer");
  if (!(l2_reg >= 0.0) || !std::isfinite(l2_reg)) fail("L2Reg must be non-negative");
}

std::array<double, HyperParams::kDimensions> HyperParams::to_vector() const {
  return {static_cast<double>(cnf[0]), static_cast<double>(cnf[1]),
          static_cast<double>(cnf[2]), static_cast<double>(cnf[3]),
          static_cast<double>(nhu[0]), static_cast<double>(nhu[1]),
          pdo[0], pdo[1],
          static_cast<double>(batch_size), learning_rate,
          static_cast<double>(attention_dim), l2_reg};
}

HyperParams HyperParams::from_vector(std::span<const double> v) {
  if (v.size() != kDimensions) {
    throw ShapeError("hyperparameter vector needs " + std::to_string(kDimensions) +
                     " entries, got " + std::to_string(v.size()));
  }
  auto as_count = [](double x) {
    return x <= 0.0 ? std::size_t{0} : static_cast<std::size_t>(std::llround(x));
  };
  HyperParams hp;
  for (std::size_t i = 0; i < 4; ++i) hp.cnf[i] = as_count(v[kCnf1 + i]);
  hp.nhu = {as_count(v[kNhu1]), as_count(v[kNhu2])};
  hp.pdo = {v[kPdo1], v[kPdo2]};
  hp.batch_size = as_count(v[kBatchSize]);
  hp.learning_rate = v[kLearningRate];
  hp.attention_dim = as_count(v[kAttentionDim]);
  hp.l2_reg = v[kL2Reg];
  return hp;
}

const std::array<std::string_view, HyperParams::kDimensions>& HyperParams::field_names() {
  static const std::array<std::string_view, kDimensions> names{
      "cnf1", "cnf2", "cnf3", "cnf4", "nhu1", "nhu2", "pdo1", "pdo2",
      "batch_size", "learning_rate", "attention_dim", "l2_reg"};
  return names;
}

}  // namespace wavecast
