#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wavecast/layer.hpp"

namespace wavecast {

// ---------------------------------------------------------------------------
// LSTM
// ---------------------------------------------------------------------------

enum LstmGate : std::size_t { kForgetGate = 0, kInputGate = 1, kCandidate = 2, kOutputGate = 3 };

/// Per-gate weights. Pre-activation of gate g is x*W[g] + h_prev*U[g] + b[g]
/// with W[g]:[input_dim,hidden], U[g]:[hidden,hidden], b[g]:[hidden].
struct LstmParams {
  std::array<Tensor, 4> W;
  std::array<Tensor, 4> U;
  std::array<Tensor, 4> b;

  static LstmParams zeros(std::size_t input_dim, std::size_t hidden);
  static LstmParams glorot(std::size_t input_dim, std::size_t hidden, std::uint64_t seed);

  std::size_t input_dim() const { return W[0].rows(); }
  std::size_t hidden_size() const { return U[0].rows(); }
  void validate() const;
};

struct LstmState {
  Tensor h;  // [hidden]
  Tensor c;  // [hidden]
};

struct LstmStepCache {
  std::vector<double> x, h_prev, c_prev;
  std::array<std::vector<double>, 4> gate;  // activated f, i, c~, o
  std::vector<double> c, tanh_c;
};

/// One LSTM step: f,i,o = sigmoid(.), c~ = tanh(.), c = f*c_prev + i*c~,
/// h = o*tanh(c). Fills `cache` when given.
LstmState lstm_cell_step(const LstmParams& p, const Tensor& x_t, const Tensor& h_prev,
                         const Tensor& c_prev, LstmStepCache* cache = nullptr);

struct LstmStepGrads {
  Tensor dx, dh_prev, dc_prev;
};

/// Backward through one step; accumulates parameter gradients into `grads`.
LstmStepGrads lstm_cell_backward(const LstmParams& p, const LstmStepCache& cache,
                                 const Tensor& dh, const Tensor& dc, LstmParams& grads);

/// Sequence LSTM returning every hidden state, [T,d] -> [T,hidden].
/// With `reverse` the sequence is consumed right to left and outputs stay
/// aligned with their input positions.
class LstmLayer final : public Layer {
 public:
  LstmLayer(std::size_t input_dim, std::size_t hidden, bool reverse, std::uint64_t seed);
  LstmLayer(LstmParams params, bool reverse);

  std::string name() const override { return reverse_ ? "lstm_reverse" : "lstm"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

  const LstmParams& params() const noexcept { return params_; }

 private:
  LstmParams params_;
  LstmParams grads_;
  bool reverse_;
  std::vector<LstmStepCache> caches_;
};

// ---------------------------------------------------------------------------
// GRU
// ---------------------------------------------------------------------------

enum GruGate : std::size_t { kUpdateGate = 0, kResetGate = 1, kGruCandidate = 2 };

struct GruParams {
  std::array<Tensor, 3> W;
  std::array<Tensor, 3> U;
  std::array<Tensor, 3> b;

  static GruParams zeros(std::size_t input_dim, std::size_t hidden);
  static GruParams glorot(std::size_t input_dim, std::size_t hidden, std::uint64_t seed);

  std::size_t input_dim() const { return W[0].rows(); }
  std::size_t hidden_size() const { return U[0].rows(); }
  void validate() const;
};

struct GruStepCache {
  std::vector<double> x, h_prev, z, r, reset_h, candidate;
};

/// z = sigmoid(.), r = sigmoid(.), h~ = tanh(x*W_h + (r*h_prev)*U_h + b_h),
/// h = (1-z)*h_prev + z*h~.
Tensor gru_cell_step(const GruParams& p, const Tensor& x_t, const Tensor& h_prev,
                     GruStepCache* cache = nullptr);

struct GruStepGrads {
  Tensor dx, dh_prev;
};

GruStepGrads gru_cell_backward(const GruParams& p, const GruStepCache& cache, const Tensor& dh,
                               GruParams& grads);

class GruLayer final : public Layer {
 public:
  GruLayer(std::size_t input_dim, std::size_t hidden, std::uint64_t seed);
  explicit GruLayer(GruParams params);

  std::string name() const override { return "gru"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

  const GruParams& params() const noexcept { return params_; }

 private:
  GruParams params_;
  GruParams grads_;
  std::vector<GruStepCache> caches_;
};

// ---------------------------------------------------------------------------
// Bidirectional LSTM
// ---------------------------------------------------------------------------

/// Runs `fwd` left to right and `bwd` right to left over `seq` [T,d]; row t of
/// the result is [h_fwd(t), h_bwd(t)], shape [T, 2*hidden].
Tensor bilstm_forward(const LstmParams& fwd, const LstmParams& bwd, const Tensor& seq);

class BiLstmLayer final : public Layer {
 public:
  BiLstmLayer(std::size_t input_dim, std::size_t hidden, std::uint64_t seed);
  BiLstmLayer(LstmParams fwd, LstmParams bwd);

  std::string name() const override { return "bilstm"; }
  Shape output_shape(const Shape& input) const override;
  Tensor forward(const Tensor& input, Mode mode) override;
  Tensor backward(const Tensor& grad_output) override;
  std::vector<ParamRef> parameters() override;

 private:
  LstmLayer forward_;
  LstmLayer backward_;
};

}  // namespace wavecast
