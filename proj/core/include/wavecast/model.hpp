#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wavecast/hyperparams.hpp"
#include "wavecast/sequential.hpp"

namespace wavecast {

/// The twelve model variants compared in the study.
enum class ModelKind {
  lstm,
  stacked_lstm,
  bilstm,
  stacked_bilstm,
  gru,
  stacked_gru,
  cnn,
  cnn_lstm,
  cnn_gru,
  cnn_bilstm,
  cnn_bilstm_sa,
  /// Same network as cnn_bilstm_sa; hyperparameters come from the tuner.
  cnn_bilstm_sa_h,
};

std::string_view model_name(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;
const std::vector<ModelKind>& all_model_kinds();

/// How the 32 coordinate columns map onto a [steps, channels] sequence.
enum class CoordinateOrder {
  /// X1,Y1,X2,Y2,... : step i is (col 2i, col 2i+1)
  interleaved,
  /// X1..X16,Y1..Y16 : step i is (col i, col 16+i)
  blocked,
};

struct SequenceLayout {
  std::size_t steps = 16;
  std::size_t channels = 2;
  CoordinateOrder order = CoordinateOrder::interleaved;

  std::size_t input_dim() const noexcept { return steps * channels; }
  Tensor to_sequence(std::span<const double> features) const;
};

/// Structural choices that are not part of the tuned vector.
struct ArchitectureOptions {
  std::size_t kernel_width = 3;
  std::size_t stride = 1;
  double hlu_alpha = 0.1;
  std::size_t attention_hops = 1;
  bool use_se_block = false;
  std::size_t se_ratio = 4;
};

/// A scalar regressor: sequence body, flatten, dense head.
class Model {
 public:
  Model(ModelKind kind, const HyperParams& hp, SequenceLayout layout,
        ArchitectureOptions options, std::uint64_t seed);

  Model(Model&&) noexcept = default;
  Model& operator=(Model&&) noexcept = default;

  /// Prediction for one feature row; caches state for `backward`.
  double forward(std::span<const double> features, Mode mode);
  /// Back-propagates d(loss)/d(prediction) for the last `forward`.
  void backward(double grad_prediction);

  /// Eval-mode predictions for each row of `features` [n, input_dim].
  std::vector<double> predict(const Tensor& features);

  std::vector<ParamRef> parameters();
  std::size_t parameter_count();
  std::vector<Tensor> snapshot();
  void restore(const std::vector<Tensor>& values);

  ModelKind kind() const noexcept { return kind_; }
  const HyperParams& hyperparams() const noexcept { return hp_; }
  const SequenceLayout& layout() const noexcept { return layout_; }
  const ArchitectureOptions& options() const noexcept { return options_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  ModelKind kind_;
  HyperParams hp_;
  SequenceLayout layout_;
  ArchitectureOptions options_;
  std::uint64_t seed_;
  Sequential net_;
};

/// Builds the requested variant; defaults to the CNN-BiLSTM-SA hybrid.
Model build_model(const HyperParams& hp, ModelKind kind = ModelKind::cnn_bilstm_sa,
                  const SequenceLayout& layout = {}, const ArchitectureOptions& options = {},
                  std::uint64_t seed = 0);

}  // namespace wavecast
