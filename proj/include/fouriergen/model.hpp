#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fouriergen/data.hpp"
#include "fouriergen/ops.hpp"
#include "fouriergen/rng.hpp"
#include "fouriergen/tensor.hpp"

namespace fgen {

// Truncated Fourier series weights: cosines a_0..a_n, sines b_1..b_n.
struct FourierCoefficients {
    std::vector<double> a;  // n+1 entries
    std::vector<double> b;  // n entries, frequency k stored at b[k-1]

    std::size_t basis_count() const { return b.size(); }
    double cosine(std::size_t k) const { return a.at(k); }
    double sine(std::size_t k) const { return k == 0 ? 0.0 : b.at(k - 1); }
};

struct LatentState {
    std::vector<double> mu;
    std::vector<double> sigma;  // strictly positive
    std::vector<double> z;      // mu + sigma * eps
};

struct ModelConfig {
    std::size_t n_classes = 4;
    std::size_t latent_dim = 128;
    std::size_t n_basis = 48;
    std::size_t conv_channels = 256;
    std::size_t conv_kernel = 3;
    std::size_t pool_window = 2;
    std::size_t n_pooled_blocks = 4;       // conv+pool+silu blocks before the final conv
    std::size_t final_conv_channels = 128;
    std::size_t decoder_hidden = 256;
    std::size_t decoder_layers = 6;
    double dropout_rate = 0.1;
    // Fixed gain applied to the decoder's raw output pair; lets the
    // coefficient scale match high-amplitude signals without requiring
    // large final-layer weights.
    double output_gain = 1.0;
    // Fixed scale applied to the value channel before the encoder.
    double input_scale = 1.0;

    std::size_t input_channels() const { return 2 + n_classes; }
    std::size_t z_star_dim() const { return latent_dim + n_classes; }
    // Smallest sampled-sequence length the conv/pool chain accepts.
    std::size_t min_input_length() const;
};

// All learnable weights: conv encoder, latent heads, basis embedding
// table and the coefficient decoder.
class ModelParameters {
public:
    ModelParameters() = default;
    static ModelParameters initialize(const ModelConfig& cfg, std::uint64_t seed);

    // Stable, checkpoint-facing enumeration of the tensors.
    std::vector<std::pair<std::string, Tensor*>> named_tensors();
    std::vector<std::pair<std::string, const Tensor*>> named_tensors() const;
    Tensor& tensor_by_name(const std::string& name);

    // Shares value storage, owns private gradient buffers; used by
    // data-parallel batch shards.
    ModelParameters shard_view() const;
    void zero_grad();
    void set_requires_grad(bool rg);
    void ensure_finite_values() const;

    ModelConfig config;
    std::vector<Tensor> conv_w, conv_b;            // 5 conv layers
    Tensor head_mu_w, head_mu_b;                   // latent mean head
    Tensor head_lv_w, head_lv_b;                   // latent log-variance head
    Tensor basis_table;                            // [(n_basis+1) x (latent+n_classes)]
    std::vector<Tensor> dec_w, dec_b;              // decoder MLP
};

// --- forward pieces -----------------------------------------------------

// Channels-over-positions assembly: column i is [x_i; t_i; one-hot label].
Tensor assemble_input(const TimeSeriesSample& sample, double input_scale = 1.0);

struct EncodeResult {
    Tensor mu;
    Tensor logvar;
};

// 5-layer conv stack, global average pooling, two affine heads.
EncodeResult encode(const Tensor& input, const ModelParameters& params, Tape* tape);

// z = mu + exp(logvar/2) * eps with eps ~ N(0, I) drawn from `rng`.
Tensor reparameterize(const Tensor& mu, const Tensor& logvar, Rng& rng, Tape* tape,
                      std::vector<double>* eps_out = nullptr);

// Batched decode: every basis row is added to z* and pushed through the
// shared MLP in one pass. Returns [n_basis+1 x 2] (cosine, sine) pairs;
// the k=0 sine is produced but never used downstream.
Tensor decode_coefficients(const Tensor& z_star, const ModelParameters& params,
                           bool training, Rng* dropout_rng, Tape* tape);

FourierCoefficients to_coefficients(const Tensor& coeff_matrix);

// f(t) = sum_k a_k cos(2 pi k t) + b_k sin(2 pi k t); handles arbitrary,
// irregular and unseen timesteps uniformly.
std::vector<double> synthesize(const FourierCoefficients& coeffs, std::span<const double> times);

// Squared-error reconstruction over the sampled timesteps plus
// beta-weighted closed-form KL against the standard-normal prior.
Tensor vae_loss(const Tensor& predicted, const Tensor& observed, const Tensor& mu,
                const Tensor& logvar, double beta, Tape* tape);

double kl_divergence_value(std::span<const double> mu, std::span<const double> sigma);

struct ForwardResult {
    Tensor loss;
    double reconstruction_term = 0.0;
    double kl_term = 0.0;
    FourierCoefficients coefficients;
    LatentState latent;
};

// assemble -> encode -> reparameterize -> [z;c] -> decode -> synthesize at
// the sample's own timesteps -> loss.
ForwardResult forward_train(const TimeSeriesSample& observed, const ModelParameters& params,
                            double beta, Rng& latent_rng, Rng& dropout_rng, Tape& tape,
                            bool training = true);

// Evaluation-mode encode/decode/synthesize with an externally supplied
// latent draw; dropout off, no gradients.
std::vector<double> predict_at(const TimeSeriesSample& observed, std::span<const double> times,
                               const ModelParameters& params, Rng& latent_rng,
                               LatentState* latent_out = nullptr);

// Ancestral sampling: z from the prior, decoded under the class label.
TimeSeriesSample generate(std::size_t class_index, std::span<const double> times,
                          const ModelParameters& params, Rng& rng,
                          FourierCoefficients* coeffs_out = nullptr);

}  // namespace fgen
