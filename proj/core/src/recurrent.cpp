#include "wavecast/recurrent.hpp"

#include <cmath>

#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"
#include "wavecast/tensor_ops.hpp"

namespace wavecast {

namespace {

// out[j] += sum_i x[i] * W(i,j)
void affine_accumulate(const Tensor& W, const double* x, double* out) {
  const std::size_t in = W.rows(), n = W.cols();
  for (std::size_t i = 0; i < in; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* w = W.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] += xi * w[j];
  }
}

// dW(i,j) += x[i]*delta[j];  dx[i] += sum_j W(i,j)*delta[j]
void affine_backward(const Tensor& W, Tensor& dW, const double* x, const double* delta,
                     double* dx) {
  const std::size_t in = W.rows(), n = W.cols();
  for (std::size_t i = 0; i < in; ++i) {
    const double* w = W.data() + i * n;
    double* gw = dW.data() + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      gw[j] += x[i] * delta[j];
      acc += w[j] * delta[j];
    }
    dx[i] += acc;
  }
}

template <std::size_t N>
void validate_gates(const std::array<Tensor, N>& W, const std::array<Tensor, N>& U,
                    const std::array<Tensor, N>& b, const char* cell) {
  const std::size_t in = W[0].rank() == 2 ? W[0].rows() : 0;
  const std::size_t hidden = U[0].rank() == 2 ? U[0].rows() : 0;
  for (std::size_t g = 0; g < N; ++g) {
    const bool ok = W[g].rank() == 2 && W[g].rows() == in && W[g].cols() == hidden &&
                    U[g].rank() == 2 && U[g].rows() == hidden && U[g].cols() == hidden &&
                    b[g].rank() == 1 && b[g].size() == hidden;
    if (!ok || hidden == 0 || in == 0) {
      throw ShapeError(std::string(cell) + " gate " + std::to_string(g) + ": W " +
                       to_string(W[g].shape()) + ", U " + to_string(U[g].shape()) + ", b " +
                       to_string(b[g].shape()) + " are inconsistent");
    }
  }
}

void require_vector(const Tensor& t, std::size_t n, const char* what) {
  if (t.size() != n) {
    throw ShapeError(std::string(what) + " has shape " + to_string(t.shape()) + ", expected " +
                     std::to_string(n) + " elements");
  }
}

std::vector<double> to_vec(const Tensor& t) { return {t.values().begin(), t.values().end()}; }

void require_sequence(const Tensor& seq, std::size_t d, const char* layer) {
  if (seq.rank() != 2 || seq.cols() != d) {
    throw ShapeError(std::string(layer) + " expects [T," + std::to_string(d) + "], got " +
                     to_string(seq.shape()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// LSTM
// ---------------------------------------------------------------------------

LstmParams LstmParams::zeros(std::size_t input_dim, std::size_t hidden) {
  LstmParams p;
  for (std::size_t g = 0; g < 4; ++g) {
    p.W[g] = Tensor({input_dim, hidden});
    p.U[g] = Tensor({hidden, hidden});
    p.b[g] = Tensor({hidden});
  }
  return p;
}

LstmParams LstmParams::glorot(std::size_t input_dim, std::size_t hidden, std::uint64_t seed) {
  LstmParams p = zeros(input_dim, hidden);
  for (std::size_t g = 0; g < 4; ++g) {
    p.W[g] = glorot_init({input_dim, hidden}, derive_seed(seed, 2 * g));
    p.U[g] = glorot_init({hidden, hidden}, derive_seed(seed, 2 * g + 1));
  }
  return p;
}

void LstmParams::validate() const { validate_gates(W, U, b, "lstm"); }

LstmState lstm_cell_step(const LstmParams& p, const Tensor& x_t, const Tensor& h_prev,
                         const Tensor& c_prev, LstmStepCache* cache) {
  const std::size_t d = p.input_dim(), n = p.hidden_size();
  require_vector(x_t, d, "lstm x_t");
  require_vector(h_prev, n, "lstm h_prev");
  require_vector(c_prev, n, "lstm c_prev");

  std::array<std::vector<double>, 4> gate;
  for (std::size_t g = 0; g < 4; ++g) {
    gate[g].assign(p.b[g].values().begin(), p.b[g].values().end());
    affine_accumulate(p.W[g], x_t.data(), gate[g].data());
    affine_accumulate(p.U[g], h_prev.data(), gate[g].data());
    for (double& v : gate[g]) v = g == kCandidate ? std::tanh(v) : sigmoid(v);
  }
  LstmState next{Tensor({n}), Tensor({n})};
  std::vector<double> tanh_c(n);
  for (std::size_t j = 0; j < n; ++j) {
    next.c[j] = gate[kForgetGate][j] * c_prev[j] + gate[kInputGate][j] * gate[kCandidate][j];
    tanh_c[j] = std::tanh(next.c[j]);
    next.h[j] = gate[kOutputGate][j] * tanh_c[j];
  }
  if (cache) {
    cache->x = to_vec(x_t);
    cache->h_prev = to_vec(h_prev);
    cache->c_prev = to_vec(c_prev);
    cache->gate = std::move(gate);
    cache->c = to_vec(next.c);
    cache->tanh_c = std::move(tanh_c);
  }
  return next;
}

LstmStepGrads lstm_cell_backward(const LstmParams& p, const LstmStepCache& cache,
                                 const Tensor& dh, const Tensor& dc, LstmParams& grads) {
  const std::size_t d = p.input_dim(), n = p.hidden_size();
  require_vector(dh, n, "lstm dh");
  require_vector(dc, n, "lstm dc");
  const auto& f = cache.gate[kForgetGate];
  const auto& i = cache.gate[kInputGate];
  const auto& g = cache.gate[kCandidate];
  const auto& o = cache.gate[kOutputGate];

  std::array<std::vector<double>, 4> delta;
  for (auto& v : delta) v.resize(n);
  LstmStepGrads out{Tensor({d}), Tensor({n}), Tensor({n})};
  for (std::size_t j = 0; j < n; ++j) {
    const double dct = dc[j] + dh[j] * o[j] * (1.0 - cache.tanh_c[j] * cache.tanh_c[j]);
    delta[kForgetGate][j] = dct * cache.c_prev[j] * f[j] * (1.0 - f[j]);
    delta[kInputGate][j] = dct * g[j] * i[j] * (1.0 - i[j]);
    delta[kCandidate][j] = dct * i[j] * (1.0 - g[j] * g[j]);
    delta[kOutputGate][j] = dh[j] * cache.tanh_c[j] * o[j] * (1.0 - o[j]);
    out.dc_prev[j] = dct * f[j];
  }
  for (std::size_t k = 0; k < 4; ++k) {
    affine_backward(p.W[k], grads.W[k], cache.x.data(), delta[k].data(), out.dx.data());
    affine_backward(p.U[k], grads.U[k], cache.h_prev.data(), delta[k].data(),
                    out.dh_prev.data());
    for (std::size_t j = 0; j < n; ++j) grads.b[k][j] += delta[k][j];
  }
  return out;
}

LstmLayer::LstmLayer(std::size_t input_dim, std::size_t hidden, bool reverse,
                     std::uint64_t seed)
    : LstmLayer(LstmParams::glorot(input_dim, hidden, seed), reverse) {}

LstmLayer::LstmLayer(LstmParams params, bool reverse)
    : params_(std::move(params)), reverse_(reverse) {
  params_.validate();
  grads_ = LstmParams::zeros(params_.input_dim(), params_.hidden_size());
}

Shape LstmLayer::output_shape(const Shape& input) const {
  if (input.size() != 2 || input[1] != params_.input_dim()) {
    throw ShapeError("lstm expects [T," + std::to_string(params_.input_dim()) + "], got " +
                     to_string(input));
  }
  return {input[0], params_.hidden_size()};
}

Tensor LstmLayer::forward(const Tensor& input, Mode) {
  require_sequence(input, params_.input_dim(), "lstm");
  const std::size_t steps = input.rows(), n = params_.hidden_size();
  Tensor out({steps, n});
  caches_.assign(steps, {});
  LstmState state{Tensor({n}), Tensor({n})};
  Tensor x({params_.input_dim()});
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t t = reverse_ ? steps - 1 - s : s;
    std::copy(input.row(t).begin(), input.row(t).end(), x.values().begin());
    state = lstm_cell_step(params_, x, state.h, state.c, &caches_[s]);
    std::copy(state.h.values().begin(), state.h.values().end(), out.row(t).begin());
  }
  return out;
}

Tensor LstmLayer::backward(const Tensor& grad_output) {
  const std::size_t steps = caches_.size(), n = params_.hidden_size();
  if (grad_output.rank() != 2 || grad_output.rows() != steps || grad_output.cols() != n) {
    throw ShapeError("lstm backward: gradient " + to_string(grad_output.shape()) +
                     " does not match last forward");
  }
  Tensor grad_input({steps, params_.input_dim()});
  Tensor dh_next({n}), dc_next({n});
  Tensor dh({n});
  for (std::size_t s = steps; s-- > 0;) {
    const std::size_t t = reverse_ ? steps - 1 - s : s;
    for (std::size_t j = 0; j < n; ++j) dh[j] = grad_output(t, j) + dh_next[j];
    LstmStepGrads g = lstm_cell_backward(params_, caches_[s], dh, dc_next, grads_);
    std::copy(g.dx.values().begin(), g.dx.values().end(), grad_input.row(t).begin());
    dh_next = std::move(g.dh_prev);
    dc_next = std::move(g.dc_prev);
  }
  return grad_input;
}

std::vector<ParamRef> LstmLayer::parameters() {
  static constexpr const char* kGateNames[4] = {"f", "i", "c", "o"};
  std::vector<ParamRef> refs;
  for (std::size_t g = 0; g < 4; ++g) {
    refs.push_back({std::string("W_") + kGateNames[g], &params_.W[g], &grads_.W[g], true});
    refs.push_back({std::string("U_") + kGateNames[g], &params_.U[g], &grads_.U[g], true});
    refs.push_back({std::string("b_") + kGateNames[g], &params_.b[g], &grads_.b[g], false});
  }
  return refs;
}

// ---------------------------------------------------------------------------
// GRU
// ---------------------------------------------------------------------------

GruParams GruParams::zeros(std::size_t input_dim, std::size_t hidden) {
  GruParams p;
  for (std::size_t g = 0; g < 3; ++g) {
    p.W[g] = Tensor({input_dim, hidden});
    p.U[g] = Tensor({hidden, hidden});
    p.b[g] = Tensor({hidden});
  }
  return p;
}

GruParams GruParams::glorot(std::size_t input_dim, std::size_t hidden, std::uint64_t seed) {
  GruParams p = zeros(input_dim, hidden);
  for (std::size_t g = 0; g < 3; ++g) {
    p.W[g] = glorot_init({input_dim, hidden}, derive_seed(seed, 2 * g));
    p.U[g] = glorot_init({hidden, hidden}, derive_seed(seed, 2 * g + 1));
  }
  return p;
}

void GruParams::validate() const { validate_gates(W, U, b, "gru"); }

Tensor gru_cell_step(const GruParams& p, const Tensor& x_t, const Tensor& h_prev,
                     GruStepCache* cache) {
  const std::size_t n = p.hidden_size();
  require_vector(x_t, p.input_dim(), "gru x_t");
  require_vector(h_prev, n, "gru h_prev");

  std::vector<double> z(p.b[kUpdateGate].values().begin(), p.b[kUpdateGate].values().end());
  std::vector<double> r(p.b[kResetGate].values().begin(), p.b[kResetGate].values().end());
  affine_accumulate(p.W[kUpdateGate], x_t.data(), z.data());
  affine_accumulate(p.U[kUpdateGate], h_prev.data(), z.data());
  affine_accumulate(p.W[kResetGate], x_t.data(), r.data());
  affine_accumulate(p.U[kResetGate], h_prev.data(), r.data());
  std::vector<double> reset_h(n);
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = sigmoid(z[j]);
    r[j] = sigmoid(r[j]);
    reset_h[j] = r[j] * h_prev[j];
  }
  std::vector<double> cand(p.b[kGruCandidate].values().begin(),
                           p.b[kGruCandidate].values().end());
  affine_accumulate(p.W[kGruCandidate], x_t.data(), cand.data());
  affine_accumulate(p.U[kGruCandidate], reset_h.data(), cand.data());

  Tensor h({n});
  for (std::size_t j = 0; j < n; ++j) {
    cand[j] = std::tanh(cand[j]);
    h[j] = (1.0 - z[j]) * h_prev[j] + z[j] * cand[j];
  }
  if (cache) {
    cache->x = to_vec(x_t);
    cache->h_prev = to_vec(h_prev);
    cache->z = std::move(z);
    cache->r = std::move(r);
    cache->reset_h = std::move(reset_h);
    cache->candidate = std::move(cand);
  }
  return h;
}

GruStepGrads gru_cell_backward(const GruParams& p, const GruStepCache& cache, const Tensor& dh,
                               GruParams& grads) {
  const std::size_t n = p.hidden_size();
  require_vector(dh, n, "gru dh");
  GruStepGrads out{Tensor({p.input_dim()}), Tensor({n})};

  std::vector<double> a_z(n), a_n(n), a_r(n, 0.0), d_reset_h(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double z = cache.z[j], cand = cache.candidate[j];
    a_z[j] = dh[j] * (cand - cache.h_prev[j]) * z * (1.0 - z);
    a_n[j] = dh[j] * z * (1.0 - cand * cand);
    out.dh_prev[j] = dh[j] * (1.0 - z);
  }
  affine_backward(p.W[kGruCandidate], grads.W[kGruCandidate], cache.x.data(), a_n.data(),
                  out.dx.data());
  affine_backward(p.U[kGruCandidate], grads.U[kGruCandidate], cache.reset_h.data(), a_n.data(),
                  d_reset_h.data());
  for (std::size_t j = 0; j < n; ++j) {
    const double r = cache.r[j];
    a_r[j] = d_reset_h[j] * cache.h_prev[j] * r * (1.0 - r);
    out.dh_prev[j] += d_reset_h[j] * r;
    grads.b[kGruCandidate][j] += a_n[j];
    grads.b[kResetGate][j] += a_r[j];
    grads.b[kUpdateGate][j] += a_z[j];
  }
  affine_backward(p.W[kResetGate], grads.W[kResetGate], cache.x.data(), a_r.data(),
                  out.dx.data());
  affine_backward(p.U[kResetGate], grads.U[kResetGate], cache.h_prev.data(), a_r.data(),
                  out.dh_prev.data());
  affine_backward(p.W[kUpdateGate], grads.W[kUpdateGate], cache.x.data(), a_z.data(),
                  out.dx.data());
  affine_backward(p.U[kUpdateGate], grads.U[kUpdateGate], cache.h_prev.data(), a_z.data(),
                  out.dh_prev.data());
  return out;
}

GruLayer::GruLayer(std::size_t input_dim, std::size_t hidden, std::uint64_t seed)
    : GruLayer(GruParams::glorot(input_dim, hidden, seed)) {}

GruLayer::GruLayer(GruParams params) : params_(std::move(params)) {
  params_.validate();
  grads_ = GruParams::zeros(params_.input_dim(), params_.hidden_size());
}

Shape GruLayer::output_shape(const Shape& input) const {
  if (input.size() != 2 || input[1] != params_.input_dim()) {
    throw ShapeError("gru expects [T," + std::to_string(params_.input_dim()) + "], got " +
                     to_string(input));
  }
  return {input[0], params_.hidden_size()};
}

Tensor GruLayer::forward(const Tensor& input, Mode) {
  require_sequence(input, params_.input_dim(), "gru");
  const std::size_t steps = input.rows(), n = params_.hidden_size();
  Tensor out({steps, n});
  caches_.assign(steps, {});
  Tensor h({n});
  Tensor x({params_.input_dim()});
  for (std::size_t t = 0; t < steps; ++t) {
    std::copy(input.row(t).begin(), input.row(t).end(), x.values().begin());
    h = gru_cell_step(params_, x, h, &caches_[t]);
    std::copy(h.values().begin(), h.values().end(), out.row(t).begin());
  }
  return out;
}

Tensor GruLayer::backward(const Tensor& grad_output) {
  const std::size_t steps = caches_.size(), n = params_.hidden_size();
  if (grad_output.rank() != 2 || grad_output.rows() != steps || grad_output.cols() != n) {
    throw ShapeError("gru backward: gradient " + to_string(grad_output.shape()) +
                     " does not match last forward");
  }
  Tensor grad_input({steps, params_.input_dim()});
  Tensor dh_next({n});
  Tensor dh({n});
  for (std::size_t t = steps; t-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) dh[j] = grad_output(t, j) + dh_next[j];
    GruStepGrads g = gru_cell_backward(params_, caches_[t], dh, grads_);
    std::copy(g.dx.values().begin(), g.dx.values().end(), grad_input.row(t).begin());
    dh_next = std::move(g.dh_prev);
  }
  return grad_input;
}

std::vector<ParamRef> GruLayer::parameters() {
  static constexpr const char* kGateNames[3] = {"z", "r", "h"};
  std::vector<ParamRef> refs;
  for (std::size_t g = 0; g < 3; ++g) {
    refs.push_back({std::string("W_") + kGateNames[g], &params_.W[g], &grads_.W[g], true});
    refs.push_back({std::string("U_") + kGateNames[g], &params_.U[g], &grads_.U[g], true});
    refs.push_back({std::string("b_") + kGateNames[g], &params_.b[g], &grads_.b[g], false});
  }
  return refs;
}

// ---------------------------------------------------------------------------
// BiLSTM
// ---------------------------------------------------------------------------

Tensor bilstm_forward(const LstmParams& fwd, const LstmParams& bwd, const Tensor& seq) {
  BiLstmLayer layer(fwd, bwd);
  return layer.forward(seq, Mode::eval);
}

BiLstmLayer::BiLstmLayer(std::size_t input_dim, std::size_t hidden, std::uint64_t seed)
    : forward_(input_dim, hidden, false, derive_seed(seed, 0)),
      backward_(input_dim, hidden, true, derive_seed(seed, 1)) {}

BiLstmLayer::BiLstmLayer(LstmParams fwd, LstmParams bwd)
    : forward_(std::move(fwd), false), backward_(std::move(bwd), true) {
  if (forward_.params().input_dim() != backward_.params().input_dim() ||
      forward_.params().hidden_size() != backward_.params().hidden_size()) {
    throw ShapeError("bilstm: forward and backward directions have different widths");
  }
}

Shape BiLstmLayer::output_shape(const Shape& input) const {
  Shape out = forward_.output_shape(input);
  out[1] *= 2;
  return out;
}

Tensor BiLstmLayer::forward(const Tensor& input, Mode mode) {
  if (input.rank() == 2 && input.rows() == 0) throw ShapeError("bilstm: empty sequence");
  const Tensor f = forward_.forward(input, mode);
  const Tensor b = backward_.forward(input, mode);
  const std::size_t steps = f.rows(), n = f.cols();
  Tensor out({steps, 2 * n});
  for (std::size_t t = 0; t < steps; ++t) {
    std::copy(f.row(t).begin(), f.row(t).end(), out.row(t).begin());
    std::copy(b.row(t).begin(), b.row(t).end(), out.row(t).begin() + n);
  }
  return out;
}

Tensor BiLstmLayer::backward(const Tensor& grad_output) {
  const std::size_t steps = grad_output.rows(), n = grad_output.cols() / 2;
  Tensor gf({steps, n}), gb({steps, n});
  for (std::size_t t = 0; t < steps; ++t) {
    auto row = grad_output.row(t);
    std::copy(row.begin(), row.begin() + n, gf.row(t).begin());
    std::copy(row.begin() + n, row.end(), gb.row(t).begin());
  }
  Tensor grad = forward_.backward(gf);
  axpy(1.0, backward_.backward(gb), grad);
  return grad;
}

std::vector<ParamRef> BiLstmLayer::parameters() {
  std::vector<ParamRef> refs;
  for (auto& r : forward_.parameters()) {
    r.name = "fwd." + r.name;
    refs.push_back(r);
  }
  for (auto& r : backward_.parameters()) {
    r.name = "bwd." + r.name;
    refs.push_back(r);
  }
  return refs;
}

}  // namespace wavecast
