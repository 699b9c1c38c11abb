#include "fouriergen/ops.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace fgen {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using CMapRM = Eigen::Map<const RowMat>;
using MapVec = Eigen::Map<Eigen::VectorXd>;
using CMapVec = Eigen::Map<const Eigen::VectorXd>;

constexpr double kTwoPi = 6.283185307179586476925287;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

bool want_grad(const Tape* tape, std::initializer_list<const Tensor*> inputs) {
    if (tape == nullptr) return false;
    for (const Tensor* t : inputs) {
        if (t->requires_grad()) return true;
    }
    return false;
}

[[noreturn]] void shape_error(const std::string& msg) {
    throw std::invalid_argument(msg);
}

}  // namespace

Tensor conv1d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              std::size_t stride, Tape* tape) {
    if (input.rank() != 2) shape_error("conv1d: input must be [C_in x L], got rank " + std::to_string(input.rank()));
    if (kernel.rank() != 3) shape_error("conv1d: kernel must be [C_out x C_in x K]");
    if (stride == 0) shape_error("conv1d: stride must be positive");
    const std::size_t c_in = input.dim(0), length = input.dim(1);
    const std::size_t c_out = kernel.dim(0), k_c_in = kernel.dim(1), k = kernel.dim(2);
    if (k_c_in != c_in) {
        shape_error("conv1d: channel axis mismatch: input has C_in=" + std::to_string(c_in) +
                    ", kernel expects C_in=" + std::to_string(k_c_in));
    }
    if (length < k) {
        shape_error("conv1d: temporal axis too short: L=" + std::to_string(length) +
                    " < K=" + std::to_string(k));
    }
    if (bias.rank() != 1 || bias.dim(0) != c_out) {
        shape_error("conv1d: bias axis mismatch: expected [" + std::to_string(c_out) + "]");
    }
    const std::size_t l_out = (length - k) / stride + 1;

    // im2col: cols(c*K + j, t) = input(c, t*stride + j); the kernel data is
    // already laid out as a [C_out x (C_in*K)] row-major matrix.
    auto cols = std::make_shared<std::vector<double>>(c_in * k * l_out);
    {
        const double* x = input.data();
        for (std::size_t c = 0; c < c_in; ++c) {
            for (std::size_t j = 0; j < k; ++j) {
                double* row = cols->data() + (c * k + j) * l_out;
                const double* src = x + c * length + j;
                for (std::size_t t = 0; t < l_out; ++t) row[t] = src[t * stride];
            }
        }
    }

    Tensor out = Tensor::zeros({c_out, l_out});
    {
        CMapRM w(kernel.data(), static_cast<Eigen::Index>(c_out), static_cast<Eigen::Index>(c_in * k));
        CMapRM cm(cols->data(), static_cast<Eigen::Index>(c_in * k), static_cast<Eigen::Index>(l_out));
        MapRM om(out.data(), static_cast<Eigen::Index>(c_out), static_cast<Eigen::Index>(l_out));
        om.noalias() = w * cm;
        CMapVec b(bias.data(), static_cast<Eigen::Index>(c_out));
        om.colwise() += b;
    }

    if (want_grad(tape, {&input, &kernel, &bias})) {
        out.set_requires_grad(true);
        Tensor in = input, ker = kernel, bi = bias, o = out;
        tape->record([in, ker, bi, o, cols, c_in, c_out, k, l_out, length, stride]() mutable {
            CMapRM g(o.grad(), static_cast<Eigen::Index>(c_out), static_cast<Eigen::Index>(l_out));
            if (bi.requires_grad()) {
                MapVec db(bi.grad(), static_cast<Eigen::Index>(c_out));
                db.noalias() += g.rowwise().sum();
            }
            if (ker.requires_grad()) {
                CMapRM cm(cols->data(), static_cast<Eigen::Index>(c_in * k), static_cast<Eigen::Index>(l_out));
                MapRM dw(ker.grad(), static_cast<Eigen::Index>(c_out), static_cast<Eigen::Index>(c_in * k));
                dw.noalias() += g * cm.transpose();
            }
            if (in.requires_grad()) {
                RowMat dcols(static_cast<Eigen::Index>(c_in * k), static_cast<Eigen::Index>(l_out));
                CMapRM w(ker.data(), static_cast<Eigen::Index>(c_out), static_cast<Eigen::Index>(c_in * k));
                dcols.noalias() = w.transpose() * g;
                double* dx = in.grad();
                for (std::size_t c = 0; c < c_in; ++c) {
                    for (std::size_t j = 0; j < k; ++j) {
                        const double* row = dcols.data() + (c * k + j) * l_out;
                        double* dst = dx + c * length + j;
                        for (std::size_t t = 0; t < l_out; ++t) dst[t * stride] += row[t];
                    }
                }
            }
        });
    }
    return out;
}

Tensor maxpool1d(const Tensor& input, std::size_t window, Tape* tape) {
    if (window == 0) throw std::invalid_argument("maxpool1d: window must be positive");
    if (input.rank() != 2) shape_error("maxpool1d: input must be [C x L]");
    const std::size_t c = input.dim(0), length = input.dim(1);
    if (length < window) {
        shape_error("maxpool1d: temporal axis too short: L=" + std::to_string(length) +
                    " < window=" + std::to_string(window));
    }
    const std::size_t l_out = length / window;

    Tensor out = Tensor::zeros({c, l_out});
    // First maximal element wins on ties so backward is deterministic.
    auto argmax = std::make_shared<std::vector<std::size_t>>(c * l_out);
    const double* x = input.data();
    double* y = out.data();
    for (std::size_t ch = 0; ch < c; ++ch) {
        for (std::size_t t = 0; t < l_out; ++t) {
            const std::size_t base = ch * length + t * window;
            std::size_t best = base;
            double best_v = x[base];
            for (std::size_t j = 1; j < window; ++j) {
                if (x[base + j] > best_v) {
                    best_v = x[base + j];
                    best = base + j;
                }
            }
            y[ch * l_out + t] = best_v;
            (*argmax)[ch * l_out + t] = best;
        }
    }

    if (want_grad(tape, {&input})) {
        out.set_requires_grad(true);
        Tensor in = input, o = out;
        tape->record([in, o, argmax]() mutable {
            double* dx = in.grad();
            const double* g = o.grad();
            for (std::size_t i = 0; i < argmax->size(); ++i) dx[(*argmax)[i]] += g[i];
        });
    }
    return out;
}

Tensor silu(const Tensor& input, Tape* tape) {
    Tensor out = Tensor::zeros(input.shape());
    const double* x = input.data();
    double* y = out.data();
    for (std::size_t i = 0; i < input.size(); ++i) y[i] = x[i] * sigmoid(x[i]);

    if (want_grad(tape, {&input})) {
        out.set_requires_grad(true);
        Tensor in = input, o = out;
        tape->record([in, o]() mutable {
            double* dx = in.grad();
            const double* g = o.grad();
            const double* x2 = in.data();
            for (std::size_t i = 0; i < in.size(); ++i) {
                const double s = sigmoid(x2[i]);
                dx[i] += g[i] * s * (1.0 + x2[i] * (1.0 - s));
            }
        });
    }
    return out;
}

Tensor affine(const Tensor& input, const Tensor& weight, const Tensor& bias, Tape* tape) {
    if (weight.rank() != 2) shape_error("affine: weight must be [D_out x D_in]");
    const std::size_t d_out = weight.dim(0), d_in = weight.dim(1);
    if (bias.rank() != 1 || bias.dim(0) != d_out) {
        shape_error("affine: bias axis mismatch: expected [" + std::to_string(d_out) + "]");
    }
    const bool batched = input.rank() == 2;
    const std::size_t rows = batched ? input.dim(0) : 1;
    const std::size_t in_cols = batched ? input.dim(1) : input.dim(0);
    if (input.rank() > 2 || in_cols != d_in) {
        shape_error("affine: input axis mismatch: expected D_in=" + std::to_string(d_in) +
                    ", got " + std::to_string(in_cols));
    }

    Tensor out = batched ? Tensor::zeros({rows, d_out}) : Tensor::zeros({d_out});
    {
        CMapRM x(input.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d_in));
        CMapRM w(weight.data(), static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_in));
        CMapVec b(bias.data(), static_cast<Eigen::Index>(d_out));
        MapRM y(out.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d_out));
        y.noalias() = x * w.transpose();
        y.rowwise() += b.transpose();
    }

    if (want_grad(tape, {&input, &weight, &bias})) {
        out.set_requires_grad(true);
        Tensor in = input, w = weight, b = bias, o = out;
        tape->record([in, w, b, o, rows, d_in, d_out]() mutable {
            CMapRM g(o.grad(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d_out));
            if (b.requires_grad()) {
                MapVec db(b.grad(), static_cast<Eigen::Index>(d_out));
                db.noalias() += g.colwise().sum().transpose();
            }
            if (w.requires_grad()) {
                CMapRM x(in.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d_in));
                MapRM dw(w.grad(), static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_in));
                dw.noalias() += g.transpose() * x;
            }
            if (in.requires_grad()) {
                CMapRM wm(w.data(), static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_in));
                MapRM dx(in.grad(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d_in));
                dx.noalias() += g * wm;
            }
        });
    }
    return out;
}

Tensor dropout(const Tensor& input, double rate, bool training, Rng& rng, Tape* tape) {
    if (!(rate >= 0.0 && rate < 1.0)) {
        throw std::invalid_argument("dropout: rate must lie in [0, 1), got " + std::to_string(rate));
    }
    if (!training || rate == 0.0) return input;

    const double scale = 1.0 / (1.0 - rate);
    auto mask = std::make_shared<std::vector<double>>(input.size());
    for (double& m : *mask) m = (rng.uniform() < rate) ? 0.0 : scale;

    Tensor out = Tensor::zeros(input.shape());
    const double* x = input.data();
    double* y = out.data();
    for (std::size_t i = 0; i < input.size(); ++i) y[i] = x[i] * (*mask)[i];

    if (want_grad(tape, {&input})) {
        out.set_requires_grad(true);
        Tensor in = input, o = out;
        tape->record([in, o, mask]() mutable {
            double* dx = in.grad();
            const double* g = o.grad();
            for (std::size_t i = 0; i < in.size(); ++i) dx[i] += g[i] * (*mask)[i];
        });
    }
    return out;
}

Tensor add_rows(const Tensor& matrix, const Tensor& row, Tape* tape) {
    if (matrix.rank() != 2 || row.rank() != 1 || matrix.dim(1) != row.dim(0)) {
        shape_error("add_rows: expected [R x D] matrix and [D] row");
    }
    const std::size_t r = matrix.dim(0), d = matrix.dim(1);
    Tensor out = Tensor::zeros({r, d});
    {
        CMapRM m(matrix.data(), static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d));
        CMapVec v(row.data(), static_cast<Eigen::Index>(d));
        MapRM y(out.data(), static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d));
        y = m.rowwise() + v.transpose();
    }
    if (want_grad(tape, {&matrix, &row})) {
        out.set_requires_grad(true);
        Tensor m = matrix, v = row, o = out;
        tape->record([m, v, o, r, d]() mutable {
            CMapRM g(o.grad(), static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d));
            if (m.requires_grad()) {
                MapRM dm(m.grad(), static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d));
                dm.noalias() += g;
            }
            if (v.requires_grad()) {
                MapVec dv(v.grad(), static_cast<Eigen::Index>(d));
                dv.noalias() += g.colwise().sum().transpose();
            }
        });
    }
    return out;
}

Tensor global_avg_pool(const Tensor& input, Tape* tape) {
    if (input.rank() != 2) shape_error("global_avg_pool: input must be [C x L]");
    const std::size_t c = input.dim(0), length = input.dim(1);
    Tensor out = Tensor::zeros({c});
    const double* x = input.data();
    for (std::size_t ch = 0; ch < c; ++ch) {
        double acc = 0.0;
        for (std::size_t t = 0; t < length; ++t) acc += x[ch * length + t];
        out.data()[ch] = acc / static_cast<double>(length);
    }
    if (want_grad(tape, {&input})) {
        out.set_requires_grad(true);
        Tensor in = input, o = out;
        tape->record([in, o, c, length]() mutable {
            double* dx = in.grad();
            const double* g = o.grad();
            const double inv = 1.0 / static_cast<double>(length);
            for (std::size_t ch = 0; ch < c; ++ch) {
                const double gi = g[ch] * inv;
                for (std::size_t t = 0; t < length; ++t) dx[ch * length + t] += gi;
            }
        });
    }
    return out;
}

Tensor concat(const Tensor& a, const Tensor& b, Tape* tape) {
    if (a.rank() != 1 || b.rank() != 1) shape_error("concat: expected two vectors");
    const std::size_t na = a.size(), nb = b.size();
    Tensor out = Tensor::zeros({na + nb});
    std::copy(a.data(), a.data() + na, out.data());
    std::copy(b.data(), b.data() + nb, out.data() + na);
    if (want_grad(tape, {&a, &b})) {
        out.set_requires_grad(true);
        Tensor ta = a, tb = b, o = out;
        tape->record([ta, tb, o, na, nb]() mutable {
            const double* g = o.grad();
            if (ta.requires_grad()) {
                double* da = ta.grad();
                for (std::size_t i = 0; i < na; ++i) da[i] += g[i];
            }
            if (tb.requires_grad()) {
                double* db = tb.grad();
                for (std::size_t i = 0; i < nb; ++i) db[i] += g[na + i];
            }
        });
    }
    return out;
}

Tensor gaussian_sample(const Tensor& mu, const Tensor& logvar,
                       std::span<const double> eps, Tape* tape) {
    if (mu.size() != logvar.size() || mu.size() != eps.size()) {
        shape_error("gaussian_sample: mu, logvar and eps must share length");
    }
    Tensor out = Tensor::zeros(mu.shape());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        out.data()[i] = mu[i] + std::exp(0.5 * logvar[i]) * eps[i];
    }
    if (want_grad(tape, {&mu, &logvar})) {
        out.set_requires_grad(true);
        Tensor m = mu, lv = logvar, o = out;
        std::vector<double> e(eps.begin(), eps.end());
        tape->record([m, lv, o, e = std::move(e)]() mutable {
            const double* g = o.grad();
            if (m.requires_grad()) {
                double* dm = m.grad();
                for (std::size_t i = 0; i < m.size(); ++i) dm[i] += g[i];
            }
            if (lv.requires_grad()) {
                double* dl = lv.grad();
                const double* lvv = lv.data();
                for (std::size_t i = 0; i < lv.size(); ++i) {
                    dl[i] += g[i] * 0.5 * std::exp(0.5 * lvv[i]) * e[i];
                }
            }
        });
    }
    return out;
}

Tensor sum_squared_error(const Tensor& pred, const Tensor& target, Tape* tape) {
    if (pred.size() != target.size()) {
        shape_error("sum_squared_error: length mismatch: " + std::to_string(pred.size()) +
                    " vs " + std::to_string(target.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        acc += d * d;
    }
    Tensor out = Tensor::scalar(acc);
    if (want_grad(tape, {&pred})) {
        out.set_requires_grad(true);
        Tensor p = pred, t = target, o = out;
        tape->record([p, t, o]() mutable {
            const double g = o.grad()[0];
            double* dp = p.grad();
            for (std::size_t i = 0; i < p.size(); ++i) dp[i] += g * 2.0 * (p[i] - t[i]);
        });
    }
    return out;
}

Tensor kl_standard_normal(const Tensor& mu, const Tensor& logvar, Tape* tape) {
    if (mu.size() != logvar.size()) shape_error("kl_standard_normal: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        acc += mu[i] * mu[i] + std::exp(logvar[i]) - 1.0 - logvar[i];
    }
    Tensor out = Tensor::scalar(0.5 * acc);
    if (want_grad(tape, {&mu, &logvar})) {
        out.set_requires_grad(true);
        Tensor m = mu, lv = logvar, o = out;
        tape->record([m, lv, o]() mutable {
            const double g = o.grad()[0];
            if (m.requires_grad()) {
                double* dm = m.grad();
                for (std::size_t i = 0; i < m.size(); ++i) dm[i] += g * m[i];
            }
            if (lv.requires_grad()) {
                double* dl = lv.grad();
                const double* v = lv.data();
                for (std::size_t i = 0; i < lv.size(); ++i) {
                    dl[i] += g * 0.5 * (std::exp(v[i]) - 1.0);
                }
            }
        });
    }
    return out;
}

void fourier_eval(std::span<const double> cos_w, std::span<const double> sin_w,
                  std::span<const double> times, std::span<double> out) {
    const std::size_t n = sin_w.size();  // frequencies 1..n
    if (cos_w.size() != n + 1) throw std::invalid_argument("fourier_eval: need n+1 cosine weights");
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double c1 = std::cos(kTwoPi * times[i]);
        const double s1 = std::sin(kTwoPi * times[i]);
        double ck = 1.0, sk = 0.0;  // cos/sin of 2*pi*k*t via angle addition
        double acc = cos_w[0];
        for (std::size_t k = 1; k <= n; ++k) {
            const double cn = ck * c1 - sk * s1;
            const double sn = sk * c1 + ck * s1;
            ck = cn;
            sk = sn;
            acc += cos_w[k] * ck + sin_w[k - 1] * sk;
        }
        out[i] = acc;
    }
}

Tensor fourier_synthesize(const Tensor& coeffs, std::span<const double> times, Tape* tape) {
    if (coeffs.rank() != 2 || coeffs.dim(1) != 2) {
        shape_error("fourier_synthesize: coefficients must be [n+1 x 2]");
    }
    const std::size_t nb = coeffs.dim(0);  // n+1 rows
    const std::size_t m = times.size();
    Tensor out = Tensor::zeros({m});

    const double* c = coeffs.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double c1 = std::cos(kTwoPi * times[i]);
        const double s1 = std::sin(kTwoPi * times[i]);
        double ck = 1.0, sk = 0.0;
        double acc = c[0];  // a_0; b_0 ignored
        for (std::size_t k = 1; k < nb; ++k) {
            const double cn = ck * c1 - sk * s1;
            const double sn = sk * c1 + ck * s1;
            ck = cn;
            sk = sn;
            acc += c[2 * k] * ck + c[2 * k + 1] * sk;
        }
        out.data()[i] = acc;
    }

    if (want_grad(tape, {&coeffs})) {
        out.set_requires_grad(true);
        Tensor co = coeffs, o = out;
        std::vector<double> ts(times.begin(), times.end());
        tape->record([co, o, ts = std::move(ts), nb]() mutable {
            double* dc = co.grad();
            const double* g = o.grad();
            for (std::size_t i = 0; i < ts.size(); ++i) {
                const double c1 = std::cos(kTwoPi * ts[i]);
                const double s1 = std::sin(kTwoPi * ts[i]);
                double ck = 1.0, sk = 0.0;
                dc[0] += g[i];
                for (std::size_t k = 1; k < nb; ++k) {
                    const double cn = ck * c1 - sk * s1;
                    const double sn = sk * c1 + ck * s1;
                    ck = cn;
                    sk = sn;
                    dc[2 * k] += g[i] * ck;
                    dc[2 * k + 1] += g[i] * sk;
                }
            }
        });
    }
    return out;
}

Tensor add_scaled(const Tensor& a, const Tensor& b, double beta, Tape* tape) {
    if (a.size() != 1 || b.size() != 1) shape_error("add_scaled: expects scalars");
    Tensor out = Tensor::scalar(a[0] + beta * b[0]);
    if (want_grad(tape, {&a, &b})) {
        out.set_requires_grad(true);
        Tensor ta = a, tb = b, o = out;
        tape->record([ta, tb, o, beta]() mutable {
            const double g = o.grad()[0];
            if (ta.requires_grad()) ta.grad()[0] += g;
            if (tb.requires_grad()) tb.grad()[0] += g * beta;
        });
    }
    return out;
}

Tensor scale_by(const Tensor& x, double alpha, Tape* tape) {
    Tensor out = Tensor::zeros(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) out.data()[i] = alpha * x[i];
    if (want_grad(tape, {&x})) {
        out.set_requires_grad(true);
        Tensor in = x, o = out;
        tape->record([in, o, alpha]() mutable {
            double* dx = in.grad();
            const double* g = o.grad();
            for (std::size_t i = 0; i < in.size(); ++i) dx[i] += alpha * g[i];
        });
    }
    return out;
}

Tensor softmax_cross_entropy(const Tensor& logits, std::size_t target_class, Tape* tape) {
    if (logits.rank() != 1) shape_error("softmax_cross_entropy: logits must be a vector");
    const std::size_t n = logits.size();
    if (target_class >= n) shape_error("softmax_cross_entropy: target class out of range");
    const double* l = logits.data();
    double mx = l[0];
    for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, l[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::exp(l[i] - mx);
    const double lse = mx + std::log(sum);
    Tensor out = Tensor::scalar(lse - l[target_class]);
    if (want_grad(tape, {&logits})) {
        out.set_requires_grad(true);
        Tensor lo = logits, o = out;
        tape->record([lo, o, target_class, mx, sum]() mutable {
            const double g = o.grad()[0];
            double* dl = lo.grad();
            const double* lv = lo.data();
            for (std::size_t i = 0; i < lo.size(); ++i) {
                const double p = std::exp(lv[i] - mx) / sum;
                dl[i] += g * (p - (i == target_class ? 1.0 : 0.0));
            }
        });
    }
    return out;
}

GradCheckReport grad_check(const std::function<Tensor(const Tensor&, Tape&)>& fn,
                           const Tensor& point, double epsilon) {
    Tensor x = point.clone();
    x.set_requires_grad(true);
    Tape tape;
    Tensor out = fn(x, tape);
    if (out.size() != 1) throw std::logic_error("grad_check: function must be scalar-valued");
    tape.backward(out);
    std::vector<double> analytic(x.grad(), x.grad() + x.size());

    Tensor probe = point.clone();
    probe.set_requires_grad(false);
    GradCheckReport report;
    for (std::size_t i = 0; i < probe.size(); ++i) {
        const double orig = probe[i];
        probe[i] = orig + epsilon;
        Tape t_plus;
        const double f_plus = fn(probe, t_plus).scalar_value();
        probe[i] = orig - epsilon;
        Tape t_minus;
        const double f_minus = fn(probe, t_minus).scalar_value();
        probe[i] = orig;
        if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
            throw std::runtime_error("grad_check: non-finite evaluation at coordinate " +
                                     std::to_string(i));
        }
        const double numeric = (f_plus - f_minus) / (2.0 * epsilon);
        const double scale = std::max(std::abs(analytic[i]), std::abs(numeric));
        const double err = scale >= 1e-6 ? std::abs(analytic[i] - numeric) / scale
                                         : std::abs(analytic[i] - numeric);
        if (err > report.max_error) {
            report.max_error = err;
            report.worst_coordinate = i;
            report.analytic_at_worst = analytic[i];
            report.numeric_at_worst = numeric;
        }
    }
    return report;
}

}  // namespace fgen
