#include "wavecast/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavecast/errors.hpp"
#include "wavecast/rng.hpp"

namespace wavecast {

namespace {

void require_matrix(const Tensor& t, const char* what) {
  if (t.rank() != 2) {
    throw ShapeError(std::string(what) + " expects a rank-2 tensor, got " + to_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                     to_string(b.shape()));
  }
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (b.rows() != k) {
    throw ShapeError("matmul: inner dimensions differ for " + to_string(a.shape()) + " x " +
                     to_string(b.shape()));
  }
  Tensor out({m, n});
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (std::size_t i = 0; i < m; ++i) {
    double* orow = po + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = pa[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = pb + p * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += aip * brow[j];
    }
  }
  return out;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul_nt");
  require_matrix(b, "matmul_nt");
  const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
  if (b.cols() != k) {
    throw ShapeError("matmul_nt: inner dimensions differ for " + to_string(a.shape()) +
                     " x " + to_string(b.shape()) + "^T");
  }
  Tensor out({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a.data() + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b.data() + j * k;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
      out(i, j) = acc;
    }
  }
  return out;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul_tn");
  require_matrix(b, "matmul_tn");
  const std::size_t k = a.rows(), m = a.cols(), n = b.cols();
  if (b.rows() != k) {
    throw ShapeError("matmul_tn: inner dimensions differ for " + to_string(a.shape()) +
                     "^T x " + to_string(b.shape()));
  }
  Tensor out({m, n});
  double* po = out.data();
  for (std::size_t p = 0; p < k; ++p) {
    const double* arow = a.data() + p * m;
    const double* brow = b.data() + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double api = arow[i];
      if (api == 0.0) continue;
      double* orow = po + i * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += api * brow[j];
    }
  }
  return out;
}

MatmulGrads matmul_backward(const Tensor& a, const Tensor& b, const Tensor& grad_out) {
  return {matmul_nt(grad_out, b), matmul_tn(a, grad_out)};
}

Tensor transpose(const Tensor& a) {
  require_matrix(a, "transpose");
  Tensor out({a.cols(), a.rows()});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

bool is_binary(ElementwiseOp op) noexcept {
  return op == ElementwiseOp::add || op == ElementwiseOp::sub || op == ElementwiseOp::mul;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor elementwise(ElementwiseOp op, const Tensor& a) {
  if (is_binary(op)) throw std::invalid_argument("elementwise: binary op given one operand");
  Tensor out = a;
  for (double& v : out.values()) {
    switch (op) {
      case ElementwiseOp::sigmoid: v = sigmoid(v); break;
      case ElementwiseOp::tanh: v = std::tanh(v); break;
      case ElementwiseOp::exp: v = std::exp(v); break;
      case ElementwiseOp::log1p:
        if (v <= -1.0) throw DomainError("log1p undefined for value " + std::to_string(v));
        v = std::log1p(v);
        break;
      default: break;
    }
  }
  return out;
}

Tensor elementwise(ElementwiseOp op, const Tensor& a, const Tensor& b) {
  if (!is_binary(op)) throw std::invalid_argument("elementwise: unary op given two operands");
  require_same_shape(a, b, "elementwise");
  Tensor out = a;
  auto o = out.values();
  auto y = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) {
    switch (op) {
      case ElementwiseOp::add: o[i] += y[i]; break;
      case ElementwiseOp::sub: o[i] -= y[i]; break;
      case ElementwiseOp::mul: o[i] *= y[i]; break;
      default: break;
    }
  }
  return out;
}

Tensor elementwise_backward(ElementwiseOp op, const Tensor& a, const Tensor& out,
                            const Tensor& grad_out) {
  require_same_shape(a, grad_out, "elementwise_backward");
  Tensor g = grad_out;
  auto gv = g.values();
  for (std::size_t i = 0; i < gv.size(); ++i) {
    switch (op) {
      case ElementwiseOp::sigmoid: gv[i] *= out[i] * (1.0 - out[i]); break;
      case ElementwiseOp::tanh: gv[i] *= 1.0 - out[i] * out[i]; break;
      case ElementwiseOp::exp: gv[i] *= out[i]; break;
      case ElementwiseOp::log1p: gv[i] /= 1.0 + a[i]; break;
      default: throw std::invalid_argument("elementwise_backward: binary op needs two operands");
    }
  }
  return g;
}

std::pair<Tensor, Tensor> elementwise_backward_binary(ElementwiseOp op, const Tensor& a,
                                               const Tensor& b, const Tensor& grad_out) {
  require_same_shape(a, b, "elementwise_backward");
  require_same_shape(a, grad_out, "elementwise_backward");
  switch (op) {
    case ElementwiseOp::add: return {grad_out, grad_out};
    case ElementwiseOp::sub: return {grad_out, scaled(grad_out, -1.0)};
    case ElementwiseOp::mul:
      return {elementwise(ElementwiseOp::mul, grad_out, b),
              elementwise(ElementwiseOp::mul, grad_out, a)};
    default: throw std::invalid_argument("elementwise_backward_binary: unary op given two operands");
  }
}

void axpy(double alpha, const Tensor& x, Tensor& y) {
  require_same_shape(x, y, "axpy");
  double* py = y.data();
  const double* px = x.data();
  for (std::size_t i = 0; i < y.size(); ++i) py[i] += alpha * px[i];
}

Tensor scaled(const Tensor& a, double factor) {
  Tensor out = a;
  for (double& v : out.values()) v *= factor;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct AxisSplit {
  std::size_t outer = 1;
  std::size_t extent = 1;
  std::size_t inner = 1;
};

AxisSplit split_axis(const Shape& shape, std::size_t axis) {
  if (axis >= shape.size()) {
    throw ShapeError("reduce: axis " + std::to_string(axis) + " out of range for " +
                     to_string(shape));
  }
  AxisSplit s;
  for (std::size_t i = 0; i < axis; ++i) s.outer *= shape[i];
  s.extent = shape[axis];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) s.inner *= shape[i];
  return s;
}

Shape reduced_shape(const Shape& shape, std::size_t axis) {
  Shape out;
  for (std::size_t i = 0; i < shape.size(); ++i)
    if (i != axis) out.push_back(shape[i]);
  if (out.empty()) out.push_back(1);
  return out;
}

}  // namespace

Tensor reduce(ReduceOp op, const Tensor& a, std::size_t axis) {
  if (a.empty()) throw ShapeError("reduce over an empty tensor");
  const AxisSplit s = split_axis(a.shape(), axis);
  if (op == ReduceOp::softmax_rows) {
    Tensor out = a;
    for (std::size_t o = 0; o < s.outer; ++o) {
      for (std::size_t in = 0; in < s.inner; ++in) {
        auto at = [&](std::size_t e) -> double& {
          return out[(o * s.extent + e) * s.inner + in];
        };
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t e = 0; e < s.extent; ++e) m = std::max(m, at(e));
        double total = 0.0;
        for (std::size_t e = 0; e < s.extent; ++e) {
          at(e) = std::exp(at(e) - m);
          total += at(e);
        }
        for (std::size_t e = 0; e < s.extent; ++e) at(e) /= total;
      }
    }
    return out;
  }

  Tensor out(reduced_shape(a.shape(), axis));
  for (std::size_t o = 0; o < s.outer; ++o) {
    for (std::size_t in = 0; in < s.inner; ++in) {
      double acc = op == ReduceOp::max ? -std::numeric_limits<double>::infinity() : 0.0;
      for (std::size_t e = 0; e < s.extent; ++e) {
        const double v = a[(o * s.extent + e) * s.inner + in];
        acc = op == ReduceOp::max ? std::max(acc, v) : acc + v;
      }
      if (op == ReduceOp::mean) acc /= static_cast<double>(s.extent);
      out[o * s.inner + in] = acc;
    }
  }
  return out;
}

Tensor reduce_backward(ReduceOp op, const Tensor& a, const Tensor& out, std::size_t axis,
                       const Tensor& grad_out) {
  const AxisSplit s = split_axis(a.shape(), axis);
  Tensor grad(a.shape());
  for (std::size_t o = 0; o < s.outer; ++o) {
    for (std::size_t in = 0; in < s.inner; ++in) {
      auto idx = [&](std::size_t e) { return (o * s.extent + e) * s.inner + in; };
      switch (op) {
        case ReduceOp::sum:
        case ReduceOp::mean: {
          const double g = grad_out[o * s.inner + in] /
                           (op == ReduceOp::mean ? static_cast<double>(s.extent) : 1.0);
          for (std::size_t e = 0; e < s.extent; ++e) grad[idx(e)] = g;
          break;
        }
        case ReduceOp::max: {
          std::size_t arg = 0;
          for (std::size_t e = 1; e < s.extent; ++e)
            if (a[idx(e)] > a[idx(arg)]) arg = e;
          grad[idx(arg)] = grad_out[o * s.inner + in];
          break;
        }
        case ReduceOp::softmax_rows: {
          double dot = 0.0;
          for (std::size_t e = 0; e < s.extent; ++e) dot += grad_out[idx(e)] * out[idx(e)];
          for (std::size_t e = 0; e < s.extent; ++e)
            grad[idx(e)] = out[idx(e)] * (grad_out[idx(e)] - dot);
          break;
        }
      }
    }
  }
  return grad;
}

Tensor softmax_rows(const Tensor& a) {
  require_matrix(a, "softmax_rows");
  return reduce(ReduceOp::softmax_rows, a, 1);
}

Tensor softmax_rows_backward(const Tensor& out, const Tensor& grad_out) {
  return reduce_backward(ReduceOp::softmax_rows, out, out, 1, grad_out);
}

// ---------------------------------------------------------------------------

double glorot_limit(const Shape& shape) {
  if (shape.size() < 2) {
    throw ShapeError("glorot_init needs a weight shape of rank >= 2, got " + to_string(shape));
  }
  const std::size_t fan_out = shape.back();
  const std::size_t fan_in = element_count(shape) / fan_out;
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

Tensor glorot_init(const Shape& shape, std::uint64_t seed) {
  const double limit = glorot_limit(shape);
  Tensor out(shape);
  Rng rng(seed);
  for (double& v : out.values()) v = rng.uniform(-limit, limit);
  return out;
}

}  // namespace wavecast
