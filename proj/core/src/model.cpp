#include "wavecast/model.hpp"

#include <array>

#include "wavecast/attention.hpp"
#include "wavecast/conv1d.hpp"
#include "wavecast/dense.hpp"
#include "wavecast/errors.hpp"
#include "wavecast/recurrent.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/se_block.hpp"

namespace wavecast {

namespace {

struct KindInfo {
  ModelKind kind;
  std::string_view name;
};

constexpr std::array<KindInfo, 12> kKinds{{
    {ModelKind::lstm, "lstm"},
    {ModelKind::stacked_lstm, "stacked-lstm"},
    {ModelKind::bilstm, "bilstm"},
    {ModelKind::stacked_bilstm, "stacked-bilstm"},
    {ModelKind::gru, "gru"},
    {ModelKind::stacked_gru, "stacked-gru"},
    {ModelKind::cnn, "cnn"},
    {ModelKind::cnn_lstm, "cnn-lstm"},
    {ModelKind::cnn_gru, "cnn-gru"},
    {ModelKind::cnn_bilstm, "cnn-bilstm"},
    {ModelKind::cnn_bilstm_sa, "cnn-bilstm-sa"},
    {ModelKind::cnn_bilstm_sa_h, "cnn-bilstm-sa-h"},
}};

enum class Recurrent { none, lstm, gru, bilstm };

struct Blueprint {
  bool conv = false;
  Recurrent recurrent = Recurrent::none;
  std::size_t recurrent_layers = 0;
  bool attention = false;
};

Blueprint blueprint(ModelKind kind) {
  switch (kind) {
    case ModelKind::lstm: return {false, Recurrent::lstm, 1, false};
    case ModelKind::stacked_lstm: return {false, Recurrent::lstm, 2, false};
    case ModelKind::bilstm: return {false, Recurrent::bilstm, 1, false};
    case ModelKind::stacked_bilstm: return {false, Recurrent::bilstm, 2, false};
    case ModelKind::gru: return {false, Recurrent::gru, 1, false};
    case ModelKind::stacked_gru: return {false, Recurrent::gru, 2, false};
    case ModelKind::cnn: return {true, Recurrent::none, 0, false};
    case ModelKind::cnn_lstm: return {true, Recurrent::lstm, 2, false};
    case ModelKind::cnn_gru: return {true, Recurrent::gru, 2, false};
    case ModelKind::cnn_bilstm: return {true, Recurrent::bilstm, 2, false};
    case ModelKind::cnn_bilstm_sa:
    case ModelKind::cnn_bilstm_sa_h: return {true, Recurrent::bilstm, 2, true};
  }
  return {};
}

}  // namespace

std::string_view model_name(ModelKind kind) noexcept {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  for (const auto& k : kKinds)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

const std::vector<ModelKind>& all_model_kinds() {
  static const std::vector<ModelKind> kinds = [] {
    std::vector<ModelKind> v;
    for (const auto& k : kKinds) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

Tensor SequenceLayout::to_sequence(std::span<const double> features) const {
  if (features.size() != input_dim()) {
    throw ShapeError("expected " + std::to_string(input_dim()) + " features, got " +
                     std::to_string(features.size()));
  }
  Tensor seq({steps, channels});
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t c = 0; c < channels; ++c) {
      seq(t, c) = order == CoordinateOrder::interleaved ? features[t * channels + c]
                                                        : features[c * steps + t];
    }
  }
  return seq;
}

Model::Model(ModelKind kind, const HyperParams& hp, SequenceLayout layout,
             ArchitectureOptions options, std::uint64_t seed)
    : kind_(kind), hp_(hp), layout_(layout), options_(options), seed_(seed) {
  hp_.validate();
  const Blueprint bp = blueprint(kind);
  std::size_t layer_index = 0;
  auto next_seed = [&] { return derive_seed(seed_, layer_index++); };
  std::size_t width = layout_.channels;
  std::size_t steps = layout_.steps;

  if (bp.conv) {
    for (std::size_t i = 0; i < hp_.cnf.size(); ++i) {
      auto conv = std::make_unique<Conv1d>(width, hp_.cnf[i], options_.kernel_width,
                                           options_.stride, options_.hlu_alpha, next_seed());
      steps = conv->output_shape({steps, width})[0];
      width = hp_.cnf[i];
      net_.add(std::move(conv));
    }
    if (options_.use_se_block) {
      net_.add(std::make_unique<SeBlock>(width, options_.se_ratio, next_seed()));
    }
    net_.add(std::make_unique<Dropout>(hp_.pdo[0], next_seed()));
  }

  for (std::size_t l = 0; l < bp.recurrent_layers; ++l) {
    const std::size_t hidden = hp_.nhu[l];
    switch (bp.recurrent) {
      case Recurrent::lstm:
        net_.add(std::make_unique<LstmLayer>(width, hidden, false, next_seed()));
        width = hidden;
        break;
      case Recurrent::gru:
        net_.add(std::make_unique<GruLayer>(width, hidden, next_seed()));
        width = hidden;
        break;
      case Recurrent::bilstm:
        net_.add(std::make_unique<BiLstmLayer>(width, hidden, next_seed()));
        width = 2 * hidden;
        break;
      case Recurrent::none: break;
    }
    // Pure recurrent stacks use PDO_1 after the first layer and PDO_2 after
    // the second; hybrids already spent PDO_1 behind the convolutions.
    const bool last = l + 1 == bp.recurrent_layers;
    if (!bp.conv && !last) net_.add(std::make_unique<Dropout>(hp_.pdo[0], next_seed()));
    if (last) {
      const double p = (!bp.conv && bp.recurrent_layers == 1) ? hp_.pdo[0] : hp_.pdo[1];
      net_.add(std::make_unique<Dropout>(p, next_seed()));
    }
  }

  if (bp.attention) {
    net_.add(std::make_unique<SelfAttention>(width, hp_.attention_dim, options_.attention_hops,
                                             next_seed()));
  }
  net_.add(std::make_unique<Flatten>());
  const Shape body = net_.output_shape({layout_.steps, layout_.channels});
  net_.add(std::make_unique<Dense>(body[1], 1, next_seed()));
  const Shape out = net_.output_shape({layout_.steps, layout_.channels});
  if (out != Shape{1, 1}) {
    throw ShapeError("model head produced " + to_string(out) + " instead of [1,1]");
  }
}

double Model::forward(std::span<const double> features, Mode mode) {
  return net_.forward(layout_.to_sequence(features), mode)[0];
}

void Model::backward(double grad_prediction) {
  net_.backward(Tensor({1, 1}, grad_prediction));
}

std::vector<double> Model::predict(const Tensor& features) {
  if (features.rank() != 2 || features.cols() != layout_.input_dim()) {
    throw ShapeError("predict expects [n," + std::to_string(layout_.input_dim()) + "], got " +
                     to_string(features.shape()));
  }
  std::vector<double> out(features.rows());
  for (std::size_t r = 0; r < features.rows(); ++r) out[r] = forward(features.row(r), Mode::eval);
  return out;
}

std::vector<ParamRef> Model::parameters() { return net_.parameters(); }

std::size_t Model::parameter_count() { return count_scalars(parameters()); }

std::vector<Tensor> Model::snapshot() {
  std::vector<Tensor> values;
  for (const auto& p : parameters()) values.push_back(*p.value);
  return values;
}

void Model::restore(const std::vector<Tensor>& values) {
  auto params = parameters();
  if (values.size() != params.size()) {
    throw ShapeError("restore: " + std::to_string(values.size()) + " tensors for " +
                     std::to_string(params.size()) + " parameters");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (values[i].shape() != params[i].value->shape()) {
      throw ShapeError("restore: parameter " + params[i].name + " expects " +
                       to_string(params[i].value->shape()) + ", got " +
                       to_string(values[i].shape()));
    }
    *params[i].value = values[i];
  }
}

Model build_model(const HyperParams& hp, ModelKind kind, const SequenceLayout& layout,
                  const ArchitectureOptions& options, std::uint64_t seed) {
  return Model(kind, hp, layout, options, seed);
}

}  // namespace wavecast
