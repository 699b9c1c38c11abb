#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fouriergen/rng.hpp"
#include "fouriergen/tensor.hpp"

namespace fgen {

// Differentiable kernels. Each op computes its forward result and, when a
// tape is supplied and any input requires a gradient, records a closure
// that accumulates into the input gradients. Passing tape == nullptr runs
// the op gradient-free (evaluation mode).

// Valid (unpadded) 1-D convolution.
//   input  [C_in x L], kernel [C_out x C_in x K], bias [C_out]
//   output [C_out x L_out], L_out = (L - K) / stride + 1
Tensor conv1d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              std::size_t stride, Tape* tape);

// Non-overlapping max pooling over the temporal axis; trailing remainder
// dropped. Backward routes gradient to the first maximal element of each
// window.
//   input [C x L] -> [C x L/window]
Tensor maxpool1d(const Tensor& input, std::size_t window, Tape* tape);

// Elementwise x * sigmoid(x).
Tensor silu(const Tensor& input, Tape* tape);

// W x + b for vectors, X W^T + b row-wise for matrices.
//   input [D_in] or [R x D_in], weight [D_out x D_in], bias [D_out]
Tensor affine(const Tensor& input, const Tensor& weight, const Tensor& bias, Tape* tape);

// Inverted dropout: zero with probability `rate`, scale survivors by
// 1/(1-rate) in training mode; strict identity in evaluation mode.
Tensor dropout(const Tensor& input, double rate, bool training, Rng& rng, Tape* tape);

// matrix [R x D] + row [D] broadcast over rows.
Tensor add_rows(const Tensor& matrix, const Tensor& row, Tape* tape);

// [C x L] -> [C], mean over the temporal axis.
Tensor global_avg_pool(const Tensor& input, Tape* tape);

// 1-D concatenation [A] ++ [B] -> [A+B].
Tensor concat(const Tensor& a, const Tensor& b, Tape* tape);

// z = mu + exp(logvar/2) * eps with eps fixed; gradient flows through mu
// and logvar only.
Tensor gaussian_sample(const Tensor& mu, const Tensor& logvar,
                       std::span<const double> eps, Tape* tape);

// Scalar sum of squared differences; `target` is treated as constant.
Tensor sum_squared_error(const Tensor& pred, const Tensor& target, Tape* tape);

// Scalar KL( N(mu, diag(exp(logvar))) || N(0, I) ), closed form.
Tensor kl_standard_normal(const Tensor& mu, const Tensor& logvar, Tape* tape);

// Truncated Fourier synthesis from a coefficient matrix.
//   coeffs [n+1 x 2] with column 0 = cosine weights, column 1 = sine
//   weights; the k=0 sine weight is ignored. Output has one value per
//   requested time.
Tensor fourier_synthesize(const Tensor& coeffs, std::span<const double> times, Tape* tape);

// Scalar a + beta * b.
Tensor add_scaled(const Tensor& a, const Tensor& b, double beta, Tape* tape);

// Elementwise alpha * x.
Tensor scale_by(const Tensor& x, double alpha, Tape* tape);

// Cross entropy of softmax(logits) against a hard target class.
Tensor softmax_cross_entropy(const Tensor& logits, std::size_t target_class, Tape* tape);

// Raw (non-graph) Fourier evaluation shared by the graph op and callers
// that already hold plain coefficient arrays. cos_w has n+1 entries,
// sin_w has n entries for frequencies 1..n.
void fourier_eval(std::span<const double> cos_w, std::span<const double> sin_w,
                  std::span<const double> times, std::span<double> out);

// Central-finite-difference audit of reverse-mode gradients.
struct GradCheckReport {
    double max_error = 0.0;          // relative where scale >= 1e-6, absolute below
    std::size_t worst_coordinate = 0;
    double analytic_at_worst = 0.0;
    double numeric_at_worst = 0.0;
};

// `fn` must be a deterministic scalar-valued map evaluated under the
// provided tape. The point is perturbed coordinate-wise with +-epsilon.
GradCheckReport grad_check(const std::function<Tensor(const Tensor&, Tape&)>& fn,
                           const Tensor& point, double epsilon);

}  // namespace fgen
