#pragma once

#include <cstdint>
#include <utility>

#include "wavecast/tensor.hpp"

namespace wavecast {

// ---------------------------------------------------------------------------
// Matrix products
// ---------------------------------------------------------------------------

/// [m,k] x [k,n] -> [m,n]. Throws ShapeError naming both shapes.
Tensor matmul(const Tensor& a, const Tensor& b);
/// a * b^T for a:[m,k], b:[n,k].
Tensor matmul_nt(const Tensor& a, const Tensor& b);
/// a^T * b for a:[k,m], b:[k,n].
Tensor matmul_tn(const Tensor& a, const Tensor& b);

struct MatmulGrads {
  Tensor da;
  Tensor db;
};
MatmulGrads matmul_backward(const Tensor& a, const Tensor& b, const Tensor& grad_out);

Tensor transpose(const Tensor& a);

// ---------------------------------------------------------------------------
// Elementwise
// ---------------------------------------------------------------------------

enum class ElementwiseOp { add, sub, mul, sigmoid, tanh, exp, log1p };

bool is_binary(ElementwiseOp op) noexcept;

/// Unary form (sigmoid, tanh, exp, log1p). log1p of a value <= -1 throws DomainError.
Tensor elementwise(ElementwiseOp op, const Tensor& a);
/// Binary form (add, sub, mul); shapes must match exactly, no broadcasting.
Tensor elementwise(ElementwiseOp op, const Tensor& a, const Tensor& b);

/// d(out)/d(a) applied to grad_out for a unary op. `out` is the forward result.
Tensor elementwise_backward(ElementwiseOp op, const Tensor& a, const Tensor& out,
                            const Tensor& grad_out);
/// Gradients of a binary op w.r.t. both operands.
std::pair<Tensor, Tensor> elementwise_backward_binary(ElementwiseOp op, const Tensor& a,
                                                      const Tensor& b, const Tensor& grad_out);

double sigmoid(double x) noexcept;

/// In-place y += alpha * x (equal shapes).
void axpy(double alpha, const Tensor& x, Tensor& y);
Tensor scaled(const Tensor& a, double factor);

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

enum class ReduceOp { sum, mean, max, softmax_rows };

/// sum/mean/max remove `axis` (a rank-1 input reduces to shape [1]).
/// softmax_rows normalizes along `axis` and keeps the shape.
Tensor reduce(ReduceOp op, const Tensor& a, std::size_t axis);
Tensor reduce_backward(ReduceOp op, const Tensor& a, const Tensor& out,
                       std::size_t axis, const Tensor& grad_out);

/// Softmax over the last axis of a rank-2 tensor.
Tensor softmax_rows(const Tensor& a);
Tensor softmax_rows_backward(const Tensor& out, const Tensor& grad_out);

// ---------------------------------------------------------------------------
// Initialization
// ---------------------------------------------------------------------------

/// Uniform in +-sqrt(6/(fan_in+fan_out)), fan_out = last extent and fan_in =
/// product of the others. Requires rank >= 2.
Tensor glorot_init(const Shape& shape, std::uint64_t seed);

double glorot_limit(const Shape& shape);

}  // namespace wavecast
