#include "fouriergen/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fgen {

namespace {

// U(-1/sqrt(fan_in), +1/sqrt(fan_in)) for weights and biases.
Tensor uniform_init(std::vector<std::size_t> shape, std::size_t fan_in,
                    std::uint64_t seed, const std::string& name) {
    Tensor t = Tensor::zeros(std::move(shape), true);
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Rng rng(derive_seed(seed, Stream::kInit, hash_name(name)));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-bound, bound);
    return t;
}

Tensor normal_init(std::vector<std::size_t> shape, double stddev, std::uint64_t seed,
                   const std::string& name) {
    Tensor t = Tensor::zeros(std::move(shape), true);
    Rng rng(derive_seed(seed, Stream::kInit, hash_name(name)));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.normal(0.0, stddev);
    return t;
}

}  // namespace

std::size_t ModelConfig::min_input_length() const {
    // Walk the chain upward until the final conv sees at least one window.
    for (std::size_t l = conv_kernel;; ++l) {
        std::size_t len = l;
        bool ok = true;
        for (std::size_t b = 0; b < n_pooled_blocks; ++b) {
            if (len < conv_kernel) { ok = false; break; }
            len = len - conv_kernel + 1;
            if (len < pool_window) { ok = false; break; }
            len /= pool_window;
        }
        if (ok && len >= conv_kernel) return l;
    }
}

ModelParameters ModelParameters::initialize(const ModelConfig& cfg, std::uint64_t seed) {
    ModelParameters p;
    p.config = cfg;

    std::size_t in_ch = cfg.input_channels();
    for (std::size_t layer = 0; layer < cfg.n_pooled_blocks + 1; ++layer) {
        const bool last = layer == cfg.n_pooled_blocks;
        const std::size_t out_ch = last ? cfg.final_conv_channels : cfg.conv_channels;
        const std::string base = "encoder.conv" + std::to_string(layer + 1);
        p.conv_w.push_back(uniform_init({out_ch, in_ch, cfg.conv_kernel}, in_ch * cfg.conv_kernel,
                                        seed, base + ".weight"));
        p.conv_b.push_back(uniform_init({out_ch}, in_ch * cfg.conv_kernel, seed, base + ".bias"));
        in_ch = out_ch;
    }

    const std::size_t feat = cfg.final_conv_channels;
    p.head_mu_w = uniform_init({cfg.latent_dim, feat}, feat, seed, "encoder.head_mu.weight");
    p.head_mu_b = uniform_init({cfg.latent_dim}, feat, seed, "encoder.head_mu.bias");
    p.head_lv_w = uniform_init({cfg.latent_dim, feat}, feat, seed, "encoder.head_logvar.weight");
    p.head_lv_b = uniform_init({cfg.latent_dim}, feat, seed, "encoder.head_logvar.bias");

    p.basis_table = normal_init({cfg.n_basis + 1, cfg.z_star_dim()}, 1.0, seed, "decoder.basis_table");

    std::size_t d_in = cfg.z_star_dim();
    for (std::size_t layer = 0; layer < cfg.decoder_layers; ++layer) {
        const bool last = layer + 1 == cfg.decoder_layers;
        const std::size_t d_out = last ? 2 : cfg.decoder_hidden;
        const std::string base = "decoder.fc" + std::to_string(layer + 1);
        p.dec_w.push_back(uniform_init({d_out, d_in}, d_in, seed, base + ".weight"));
        p.dec_b.push_back(uniform_init({d_out}, d_in, seed, base + ".bias"));
        d_in = d_out;
    }
    return p;
}

std::vector<std::pair<std::string, Tensor*>> ModelParameters::named_tensors() {
    std::vector<std::pair<std::string, Tensor*>> out;
    for (std::size_t i = 0; i < conv_w.size(); ++i) {
        const std::string base = "encoder.conv" + std::to_string(i + 1);
        out.emplace_back(base + ".weight", &conv_w[i]);
        out.emplace_back(base + ".bias", &conv_b[i]);
    }
    out.emplace_back("encoder.head_mu.weight", &head_mu_w);
    out.emplace_back("encoder.head_mu.bias", &head_mu_b);
    out.emplace_back("encoder.head_logvar.weight", &head_lv_w);
    out.emplace_back("encoder.head_logvar.bias", &head_lv_b);
    out.emplace_back("decoder.basis_table", &basis_table);
    for (std::size_t i = 0; i < dec_w.size(); ++i) {
        const std::string base = "decoder.fc" + std::to_string(i + 1);
        out.emplace_back(base + ".weight", &dec_w[i]);
        out.emplace_back(base + ".bias", &dec_b[i]);
    }
    return out;
}

std::vector<std::pair<std::string, const Tensor*>> ModelParameters::named_tensors() const {
    std::vector<std::pair<std::string, const Tensor*>> out;
    for (auto& [name, t] : const_cast<ModelParameters*>(this)->named_tensors()) {
        out.emplace_back(name, t);
    }
    return out;
}

Tensor& ModelParameters::tensor_by_name(const std::string& name) {
    for (auto& [n, t] : named_tensors()) {
        if (n == name) return *t;
    }
    throw std::invalid_argument("unknown parameter tensor: " + name);
}

ModelParameters ModelParameters::shard_view() const {
    ModelParameters v;
    v.config = config;
    for (const auto& t : conv_w) v.conv_w.push_back(t.alias_with_own_grad());
    for (const auto& t : conv_b) v.conv_b.push_back(t.alias_with_own_grad());
    v.head_mu_w = head_mu_w.alias_with_own_grad();
    v.head_mu_b = head_mu_b.alias_with_own_grad();
    v.head_lv_w = head_lv_w.alias_with_own_grad();
    v.head_lv_b = head_lv_b.alias_with_own_grad();
    v.basis_table = basis_table.alias_with_own_grad();
    for (const auto& t : dec_w) v.dec_w.push_back(t.alias_with_own_grad());
    for (const auto& t : dec_b) v.dec_b.push_back(t.alias_with_own_grad());
    return v;
}

void ModelParameters::zero_grad() {
    for (auto& [name, t] : named_tensors()) t->zero_grad();
}

void ModelParameters::set_requires_grad(bool rg) {
    for (auto& [name, t] : named_tensors()) t->set_requires_grad(rg);
}

void ModelParameters::ensure_finite_values() const {
    for (const auto& [name, t] : named_tensors()) t->ensure_finite("parameter " + name);
}

Tensor assemble_input(const TimeSeriesSample& sample, double input_scale) {
    sample.validate();
    const std::size_t n_c = sample.label.size();
    const std::size_t length = sample.times.size();
    Tensor out = Tensor::zeros({2 + n_c, length});
    double* d = out.data();
    for (std::size_t i = 0; i < length; ++i) {
        d[i] = sample.values[i] * input_scale;
        d[length + i] = sample.times[i];
    }
    for (std::size_t c = 0; c < n_c; ++c) {
        const double v = sample.label[c];
        double* row = d + (2 + c) * length;
        std::fill(row, row + length, v);
    }
    return out;
}

EncodeResult encode(const Tensor& input, const ModelParameters& params, Tape* tape) {
    const ModelConfig& cfg = params.config;
    if (input.rank() != 2 || input.dim(0) != cfg.input_channels()) {
        throw std::invalid_argument("encode: expected [" + std::to_string(cfg.input_channels()) +
                                    " x L] input");
    }
    const std::size_t min_len = cfg.min_input_length();
    if (input.dim(1) < min_len) {
        throw std::invalid_argument(
            "encode: sampled sequence has " + std::to_string(input.dim(1)) +
            " positions; the conv/pool chain needs at least " + std::to_string(min_len));
    }

    Tensor h = input;
    for (std::size_t layer = 0; layer < cfg.n_pooled_blocks; ++layer) {
        h = conv1d(h, params.conv_w[layer], params.conv_b[layer], 1, tape);
        h = maxpool1d(h, cfg.pool_window, tape);
        h = silu(h, tape);
    }
    h = conv1d(h, params.conv_w[cfg.n_pooled_blocks], params.conv_b[cfg.n_pooled_blocks], 1, tape);
    h = global_avg_pool(h, tape);

    EncodeResult r;
    r.mu = affine(h, params.head_mu_w, params.head_mu_b, tape);
    r.logvar = affine(h, params.head_lv_w, params.head_lv_b, tape);
    return r;
}

Tensor reparameterize(const Tensor& mu, const Tensor& logvar, Rng& rng, Tape* tape,
                      std::vector<double>* eps_out) {
    std::vector<double> eps(mu.size());
    for (double& e : eps) e = rng.normal();
    if (eps_out != nullptr) *eps_out = eps;
    return gaussian_sample(mu, logvar, eps, tape);
}

Tensor decode_coefficients(const Tensor& z_star, const ModelParameters& params,
                           bool training, Rng* dropout_rng, Tape* tape) {
    const ModelConfig& cfg = params.config;
    if (z_star.rank() != 1 || z_star.dim(0) != cfg.z_star_dim()) {
        throw std::invalid_argument("decode_coefficients: conditioned latent must have dim " +
                                    std::to_string(cfg.z_star_dim()));
    }
    // One batched pass over all n+1 shifted latents.
    Tensor h = add_rows(params.basis_table, z_star, tape);
    for (std::size_t layer = 0; layer + 1 < cfg.decoder_layers; ++layer) {
        h = affine(h, params.dec_w[layer], params.dec_b[layer], tape);
        h = silu(h, tape);
        if (training && cfg.dropout_rate > 0.0) {
            if (dropout_rng == nullptr) {
                throw std::invalid_argument("decode_coefficients: training mode needs a dropout rng");
            }
            h = dropout(h, cfg.dropout_rate, true, *dropout_rng, tape);
        }
    }
    h = affine(h, params.dec_w[cfg.decoder_layers - 1], params.dec_b[cfg.decoder_layers - 1], tape);
    if (cfg.output_gain != 1.0) {
        h = scale_by(h, cfg.output_gain, tape);
    }
    return h;
}

FourierCoefficients to_coefficients(const Tensor& coeff_matrix) {
    if (coeff_matrix.rank() != 2 || coeff_matrix.dim(1) != 2) {
        throw std::invalid_argument("to_coefficients: expected [n+1 x 2] matrix");
    }
    const std::size_t rows = coeff_matrix.dim(0);
    FourierCoefficients c;
    c.a.resize(rows);
    c.b.resize(rows - 1);
    for (std::size_t k = 0; k < rows; ++k) {
        c.a[k] = coeff_matrix[2 * k];
        if (k > 0) c.b[k - 1] = coeff_matrix[2 * k + 1];  // b_0 discarded
    }
    return c;
}

std::vector<double> synthesize(const FourierCoefficients& coeffs, std::span<const double> times) {
    for (double t : times) {
        if (!std::isfinite(t)) throw std::invalid_argument("synthesize: non-finite timestep");
    }
    std::vector<double> out(times.size());
    fourier_eval(coeffs.a, coeffs.b, times, out);
    return out;
}

Tensor vae_loss(const Tensor& predicted, const Tensor& observed, const Tensor& mu,
                const Tensor& logvar, double beta, Tape* tape) {
    if (beta <= 0.0) throw std::invalid_argument("vae_loss: beta must be positive");
    Tensor recon = sum_squared_error(predicted, observed, tape);
    Tensor kl = kl_standard_normal(mu, logvar, tape);
    return add_scaled(recon, kl, beta, tape);
}

double kl_divergence_value(std::span<const double> mu, std::span<const double> sigma) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double s2 = sigma[i] * sigma[i];
        acc += mu[i] * mu[i] + s2 - 1.0 - std::log(s2);
    }
    return 0.5 * acc;
}

ForwardResult forward_train(const TimeSeriesSample& observed, const ModelParameters& params,
                            double beta, Rng& latent_rng, Rng& dropout_rng, Tape& tape,
                            bool training) {
    Tensor input = assemble_input(observed, params.config.input_scale);
    EncodeResult enc = encode(input, params, &tape);
    std::vector<double> eps;
    Tensor z = reparameterize(enc.mu, enc.logvar, latent_rng, &tape, &eps);
    Tensor label = Tensor::from({observed.label.size()},
                                std::vector<double>(observed.label.begin(), observed.label.end()));
    Tensor z_star = concat(z, label, &tape);
    Tensor coeffs = decode_coefficients(z_star, params, training, &dropout_rng, &tape);
    Tensor pred = fourier_synthesize(coeffs, observed.times, &tape);
    Tensor target = Tensor::from({observed.values.size()},
                                 std::vector<double>(observed.values.begin(), observed.values.end()));
    Tensor recon = sum_squared_error(pred, target, &tape);
    Tensor kl = kl_standard_normal(enc.mu, enc.logvar, &tape);
    Tensor loss = add_scaled(recon, kl, beta, &tape);

    ForwardResult r;
    r.loss = loss;
    r.reconstruction_term = recon.scalar_value();
    r.kl_term = kl.scalar_value();
    r.coefficients = to_coefficients(coeffs);
    r.latent.mu.assign(enc.mu.data(), enc.mu.data() + enc.mu.size());
    r.latent.sigma.resize(enc.logvar.size());
    for (std::size_t i = 0; i < enc.logvar.size(); ++i) {
        r.latent.sigma[i] = std::exp(0.5 * enc.logvar[i]);
    }
    r.latent.z.assign(z.data(), z.data() + z.size());
    return r;
}

std::vector<double> predict_at(const TimeSeriesSample& observed, std::span<const double> times,
                               const ModelParameters& params, Rng& latent_rng,
                               LatentState* latent_out) {
    Tensor input = assemble_input(observed, params.config.input_scale);
    EncodeResult enc = encode(input, params, nullptr);
    Tensor z = reparameterize(enc.mu, enc.logvar, latent_rng, nullptr);
    Tensor label = Tensor::from({observed.label.size()},
                                std::vector<double>(observed.label.begin(), observed.label.end()));
    Tensor z_star = concat(z, label, nullptr);
    Tensor coeffs = decode_coefficients(z_star, params, false, nullptr, nullptr);
    if (latent_out != nullptr) {
        latent_out->mu.assign(enc.mu.data(), enc.mu.data() + enc.mu.size());
        latent_out->sigma.resize(enc.logvar.size());
        for (std::size_t i = 0; i < enc.logvar.size(); ++i) {
            latent_out->sigma[i] = std::exp(0.5 * enc.logvar[i]);
        }
        latent_out->z.assign(z.data(), z.data() + z.size());
    }
    return synthesize(to_coefficients(coeffs), times);
}

TimeSeriesSample generate(std::size_t class_index, std::span<const double> times,
                          const ModelParameters& params, Rng& rng,
                          FourierCoefficients* coeffs_out) {
    const ModelConfig& cfg = params.config;
    if (class_index >= cfg.n_classes) {
        throw std::invalid_argument("generate: class index " + std::to_string(class_index) +
                                    " out of range (n_classes=" + std::to_string(cfg.n_classes) + ")");
    }
    params.ensure_finite_values();

    Tensor z = Tensor::zeros({cfg.latent_dim});
    for (std::size_t i = 0; i < cfg.latent_dim; ++i) z[i] = rng.normal();
    std::vector<double> label(cfg.n_classes, 0.0);
    label[class_index] = 1.0;
    Tensor z_star = concat(z, Tensor::from({cfg.n_classes}, label), nullptr);
    Tensor coeffs = decode_coefficients(z_star, params, false, nullptr, nullptr);
    const FourierCoefficients fc = to_coefficients(coeffs);
    if (coeffs_out != nullptr) *coeffs_out = fc;

    TimeSeriesSample s;
    s.times.assign(times.begin(), times.end());
    s.values = synthesize(fc, times);
    s.label = std::move(label);
    s.window = {0.0, 1.0};
    return s;
}

}  // namespace fgen
