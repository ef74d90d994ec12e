#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lenia_moqd::descriptor {

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VaeShape {
    int input = 1024;
    int hidden = 256;
    int latent = 8;

    bool operator==(const VaeShape&) const = default;
};

/// Weights of a one-hidden-layer VAE.
///
/// Encoder: h = tanh(W_e x + b_e), mu = W_mu h + b_mu, logvar = W_lv h + b_lv.
/// Decoder: g = tanh(W_d z + b_d), x_hat = W_o g + b_o (linear output).
template <typename Scalar>
struct BasicVaeParams {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Matrix enc_w;
    Vector enc_b;
    Matrix mu_w;
    Vector mu_b;
    Matrix logvar_w;
    Vector logvar_b;
    Matrix dec_w;
    Vector dec_b;
    Matrix out_w;
    Vector out_b;

    static BasicVaeParams zeros(const VaeShape& shape);
    /// Glorot-uniform weights, zero biases.
    static BasicVaeParams random(const VaeShape& shape, std::uint64_t seed);

    VaeShape shape() const;
    bool consistent() const;
    bool all_finite() const;
    std::size_t parameter_count() const;

    /// Visits every tensor in a fixed order with its name.
    template <typename F>
    void for_each_tensor(F&& f)
    {
        f("enc_w", enc_w);
        f("enc_b", enc_b);
        f("mu_w", mu_w);
        f("mu_b", mu_b);
        f("logvar_w", logvar_w);
        f("logvar_b", logvar_b);
        f("dec_w", dec_w);
        f("dec_b", dec_b);
        f("out_w", out_w);
        f("out_b", out_b);
    }
    template <typename F>
    void for_each_tensor(F&& f) const
    {
        f("enc_w", enc_w);
        f("enc_b", enc_b);
        f("mu_w", mu_w);
        f("mu_b", mu_b);
        f("logvar_w", logvar_w);
        f("logvar_b", logvar_b);
        f("dec_w", dec_w);
        f("dec_b", dec_b);
        f("out_w", out_w);
        f("out_b", out_b);
    }

    /// All parameters in for_each_tensor order, column-major within each tensor.
    Vector flatten() const;
    void unflatten(const Vector& flat);

    bool operator==(const BasicVaeParams& other) const;
};

template <typename Scalar>
struct LossBreakdown {
    Scalar total = 0;
    Scalar reconstruction = 0;
    Scalar kl = 0;
};

/// VAE with analytic gradients and momentum SGD.
///
/// Loss per batch of B column samples:
///   (1/B) sum_b [ ||x_hat_b - x_b||^2 + beta * KL(q(z|x_b) || N(0, I)) ]
/// with z = mu + exp(logvar / 2) * eps drawn only during training.
template <typename Scalar>
class BasicVae {
public:
    using Params = BasicVaeParams<Scalar>;
    using Matrix = typename Params::Matrix;
    using Vector = typename Params::Vector;

    explicit BasicVae(Params params, Scalar momentum = Scalar(0.9));
    BasicVae(const VaeShape& shape, std::uint64_t seed, Scalar momentum = Scalar(0.9));

    const Params& params() const { return params_; }
    VaeShape shape() const { return params_.shape(); }
    Scalar momentum() const { return momentum_; }

    /// mu head for one input. Throws NumericError on non-finite activations.
    Vector encode(const Vector& input) const;
    /// mu head for each column of `inputs`.
    Matrix encode_batch(const Matrix& inputs) const;

    /// Loss and, when `grad` is non-null, its exact gradient for a fixed noise
    /// matrix (latent x B). Pure.
    LossBreakdown<Scalar> loss_and_gradient(const Matrix& batch, const Matrix& noise, Scalar beta,
                                            Params* grad) const;

    /// One momentum-SGD step on `batch` (columns are samples). Throws
    /// NumericError and leaves parameters untouched when the loss or the
    /// updated parameters are not finite. Returns the pre-update loss.
    LossBreakdown<Scalar> train_step(const Matrix& batch, Scalar lr, Scalar beta, std::mt19937_64& rng);

private:
    Params params_;
    Params velocity_;
    Scalar momentum_;
};

using VaeParams = BasicVaeParams<float>;
using Vae = BasicVae<float>;

/// Writes `<prefix>.bin` (raw little-endian float32 tensors in for_each_tensor
/// order) and `<prefix>.json` (layer shapes, RNG seed, pooling metadata).
void save_encoder(const std::string& prefix, const Vae& vae, std::uint64_t seed, int pool_size, int channels);

struct LoadedEncoder {
    Vae vae;
    std::uint64_t seed = 0;
    int pool_size = 0;
    int channels = 0;
};
LoadedEncoder load_encoder(const std::string& prefix);

} // namespace lenia_moqd::descriptor
