#include <lenia_moqd/descriptor/vae.hpp>

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <fstream>
#include <vector>

namespace lenia_moqd::descriptor {

namespace {

template <typename Derived>
bool finite(const Eigen::DenseBase<Derived>& m)
{
    return m.allFinite();
}

template <typename Matrix>
void glorot(Matrix& m, std::mt19937_64& rng)
{
    using Scalar = typename Matrix::Scalar;
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            m(i, j) = static_cast<Scalar>(dist(rng));
}

} // namespace

template <typename Scalar>
BasicVaeParams<Scalar> BasicVaeParams<Scalar>::zeros(const VaeShape& s)
{
    BasicVaeParams p;
    p.enc_w = Matrix::Zero(s.hidden, s.input);
    p.enc_b = Vector::Zero(s.hidden);
    p.mu_w = Matrix::Zero(s.latent, s.hidden);
    p.mu_b = Vector::Zero(s.latent);
    p.logvar_w = Matrix::Zero(s.latent, s.hidden);
    p.logvar_b = Vector::Zero(s.latent);
    p.dec_w = Matrix::Zero(s.hidden, s.latent);
    p.dec_b = Vector::Zero(s.hidden);
    p.out_w = Matrix::Zero(s.input, s.hidden);
    p.out_b = Vector::Zero(s.input);
    return p;
}

template <typename Scalar>
BasicVaeParams<Scalar> BasicVaeParams<Scalar>::random(const VaeShape& s, std::uint64_t seed)
{
    if (s.input <= 0 || s.hidden <= 0 || s.latent <= 0)
        throw std::invalid_argument("VAE dimensions must be positive");
    auto p = zeros(s);
    std::mt19937_64 rng(seed);
    glorot(p.enc_w, rng);
    glorot(p.mu_w, rng);
    glorot(p.logvar_w, rng);
    glorot(p.dec_w, rng);
    glorot(p.out_w, rng);
    return p;
}

template <typename Scalar>
VaeShape BasicVaeParams<Scalar>::shape() const
{
    return VaeShape{static_cast<int>(enc_w.cols()), static_cast<int>(enc_w.rows()), static_cast<int>(mu_w.rows())};
}

template <typename Scalar>
bool BasicVaeParams<Scalar>::consistent() const
{
    const auto s = shape();
    return enc_b.size() == s.hidden && mu_w.cols() == s.hidden && mu_b.size() == s.latent
        && logvar_w.rows() == s.latent && logvar_w.cols() == s.hidden && logvar_b.size() == s.latent
        && dec_w.rows() == s.hidden && dec_w.cols() == s.latent && dec_b.size() == s.hidden
        && out_w.rows() == s.input && out_w.cols() == s.hidden && out_b.size() == s.input;
}

template <typename Scalar>
bool BasicVaeParams<Scalar>::all_finite() const
{
    bool ok = true;
    for_each_tensor([&](const char*, const auto& t) { ok = ok && finite(t); });
    return ok;
}

template <typename Scalar>
std::size_t BasicVaeParams<Scalar>::parameter_count() const
{
    std::size_t n = 0;
    for_each_tensor([&](const char*, const auto& t) { n += static_cast<std::size_t>(t.size()); });
    return n;
}

template <typename Scalar>
typename BasicVaeParams<Scalar>::Vector BasicVaeParams<Scalar>::flatten() const
{
    Vector flat(static_cast<Eigen::Index>(parameter_count()));
    Eigen::Index offset = 0;
    for_each_tensor([&](const char*, const auto& t) {
        flat.segment(offset, t.size()) = Eigen::Map<const Vector>(t.data(), t.size());
        offset += t.size();
    });
    return flat;
}

template <typename Scalar>
void BasicVaeParams<Scalar>::unflatten(const Vector& flat)
{
    if (flat.size() != static_cast<Eigen::Index>(parameter_count()))
        throw std::invalid_argument("flat parameter vector has the wrong length");
    Eigen::Index offset = 0;
    for_each_tensor([&](const char*, auto& t) {
        Eigen::Map<Vector>(t.data(), t.size()) = flat.segment(offset, t.size());
        offset += t.size();
    });
}

template <typename Scalar>
bool BasicVaeParams<Scalar>::operator==(const BasicVaeParams& other) const
{
    if (!(shape() == other.shape()))
        return false;
    return flatten() == other.flatten();
}

template <typename Scalar>
BasicVae<Scalar>::BasicVae(Params params, Scalar momentum)
    : params_(std::move(params)), velocity_(Params::zeros(params_.shape())), momentum_(momentum)
{
    if (!params_.consistent())
        throw std::invalid_argument("inconsistent VAE parameter shapes");
    if (!params_.all_finite())
        throw NumericError("VAE parameters are not finite");
}

template <typename Scalar>
BasicVae<Scalar>::BasicVae(const VaeShape& shape, std::uint64_t seed, Scalar momentum)
    : BasicVae(Params::random(shape, seed), momentum)
{
}

template <typename Scalar>
typename BasicVae<Scalar>::Vector BasicVae<Scalar>::encode(const Vector& input) const
{
    if (input.size() != params_.enc_w.cols())
        throw std::invalid_argument("encoder input has the wrong length");
    const Vector h = (params_.enc_w * input + params_.enc_b).array().tanh().matrix();
    Vector mu = params_.mu_w * h + params_.mu_b;
    if (!mu.allFinite())
        throw NumericError("non-finite encoder activation");
    return mu;
}

template <typename Scalar>
typename BasicVae<Scalar>::Matrix BasicVae<Scalar>::encode_batch(const Matrix& inputs) const
{
    if (inputs.rows() != params_.enc_w.cols())
        throw std::invalid_argument("encoder input has the wrong length");
    const Matrix h = ((params_.enc_w * inputs).colwise() + params_.enc_b).array().tanh().matrix();
    Matrix mu = (params_.mu_w * h).colwise() + params_.mu_b;
    if (!mu.allFinite())
        throw NumericError("non-finite encoder activation");
    return mu;
}

template <typename Scalar>
LossBreakdown<Scalar> BasicVae<Scalar>::loss_and_gradient(const Matrix& x, const Matrix& eps, Scalar beta,
                                                          Params* grad) const
{
    const auto& p = params_;
    const Eigen::Index batch = x.cols();
    if (batch == 0)
        throw std::invalid_argument("empty training batch");
    if (x.rows() != p.enc_w.cols() || eps.rows() != p.mu_w.rows() || eps.cols() != batch)
        throw std::invalid_argument("batch or noise has the wrong shape");

    const Matrix h = ((p.enc_w * x).colwise() + p.enc_b).array().tanh().matrix();
    const Matrix mu = (p.mu_w * h).colwise() + p.mu_b;
    const Matrix logvar = (p.logvar_w * h).colwise() + p.logvar_b;
    const Matrix std_dev = (logvar.array() * Scalar(0.5)).exp().matrix();
    const Matrix z = mu + std_dev.cwiseProduct(eps);
    const Matrix g = ((p.dec_w * z).colwise() + p.dec_b).array().tanh().matrix();
    const Matrix x_hat = (p.out_w * g).colwise() + p.out_b;

    const Scalar inv_b = Scalar(1) / static_cast<Scalar>(batch);
    const Matrix residual = x_hat - x;
    const Matrix var = std_dev.cwiseProduct(std_dev);

    LossBreakdown<Scalar> loss;
    loss.reconstruction = residual.squaredNorm() * inv_b;
    loss.kl = Scalar(0.5) * (mu.array().square() + var.array() - Scalar(1) - logvar.array()).sum() * inv_b;
    loss.total = loss.reconstruction + beta * loss.kl;

    if (grad == nullptr)
        return loss;

    const Matrix d_xhat = residual * (Scalar(2) * inv_b);
    grad->out_w = d_xhat * g.transpose();
    grad->out_b = d_xhat.rowwise().sum();

    const Matrix d_dec = (p.out_w.transpose() * d_xhat).cwiseProduct((Scalar(1) - g.array().square()).matrix());
    grad->dec_w = d_dec * z.transpose();
    grad->dec_b = d_dec.rowwise().sum();

    const Matrix d_z = p.dec_w.transpose() * d_dec;
    const Matrix d_mu = d_z + mu * (beta * inv_b);
    const Matrix d_logvar = (d_z.cwiseProduct(eps).cwiseProduct(std_dev) * Scalar(0.5)).array()
        + (var.array() - Scalar(1)) * (Scalar(0.5) * beta * inv_b);
    grad->mu_w = d_mu * h.transpose();
    grad->mu_b = d_mu.rowwise().sum();
    grad->logvar_w = d_logvar * h.transpose();
    grad->logvar_b = d_logvar.rowwise().sum();

    const Matrix d_h = p.mu_w.transpose() * d_mu + p.logvar_w.transpose() * d_logvar;
    const Matrix d_enc = d_h.cwiseProduct((Scalar(1) - h.array().square()).matrix());
    grad->enc_w = d_enc * x.transpose();
    grad->enc_b = d_enc.rowwise().sum();
    return loss;
}

template <typename Scalar>
LossBreakdown<Scalar> BasicVae<Scalar>::train_step(const Matrix& batch, Scalar lr, Scalar beta, std::mt19937_64& rng)
{
    if (!(lr > Scalar(0)))
        throw std::invalid_argument("learning rate must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix eps(params_.mu_w.rows(), batch.cols());
    for (Eigen::Index j = 0; j < eps.cols(); ++j)
        for (Eigen::Index i = 0; i < eps.rows(); ++i)
            eps(i, j) = static_cast<Scalar>(normal(rng));

    Params grad = Params::zeros(params_.shape());
    const auto loss = loss_and_gradient(batch, eps, beta, &grad);
    if (!std::isfinite(static_cast<double>(loss.total)))
        throw NumericError("non-finite VAE loss");

    Params velocity = velocity_;
    Params next = params_;
    auto vel_flat = velocity.flatten();
    vel_flat = momentum_ * vel_flat - lr * grad.flatten();
    auto next_flat = next.flatten() + vel_flat;
    if (!next_flat.allFinite())
        throw NumericError("non-finite VAE parameters after update");
    velocity_.unflatten(vel_flat);
    params_.unflatten(next_flat);
    return loss;
}

template struct BasicVaeParams<float>;
template struct BasicVaeParams<double>;
template class BasicVae<float>;
template class BasicVae<double>;

static_assert(std::endian::native == std::endian::little, "encoder checkpoints assume a little-endian host");

void save_encoder(const std::string& prefix, const Vae& vae, std::uint64_t seed, int pool_size, int channels)
{
    const auto& params = vae.params();
    nlohmann::json layers = nlohmann::json::array();
    std::ofstream bin(prefix + ".bin", std::ios::binary);
    if (!bin)
        throw std::runtime_error("cannot write " + prefix + ".bin");
    params.for_each_tensor([&](const char* name, const auto& t) {
        layers.push_back({{"name", name}, {"rows", t.rows()}, {"cols", t.cols()}});
        bin.write(reinterpret_cast<const char*>(t.data()), static_cast<std::streamsize>(t.size() * sizeof(float)));
    });
    if (!bin)
        throw std::runtime_error("write failed for " + prefix + ".bin");

    const auto s = params.shape();
    nlohmann::json meta{{"format", "float32-le"},
                        {"input", s.input},
                        {"hidden", s.hidden},
                        {"latent", s.latent},
                        {"momentum", vae.momentum()},
                        {"seed", seed},
                        {"pool_size", pool_size},
                        {"channels", channels},
                        {"layers", layers}};
    std::ofstream side(prefix + ".json");
    if (!side)
        throw std::runtime_error("cannot write " + prefix + ".json");
    side << meta.dump(2) << '\n';
}

LoadedEncoder load_encoder(const std::string& prefix)
{
    std::ifstream side(prefix + ".json");
    if (!side)
        throw std::runtime_error("cannot read " + prefix + ".json");
    const auto meta = nlohmann::json::parse(side);
    const VaeShape shape{meta.at("input").get<int>(), meta.at("hidden").get<int>(), meta.at("latent").get<int>()};

    auto params = VaeParams::zeros(shape);
    std::ifstream bin(prefix + ".bin", std::ios::binary);
    if (!bin)
        throw std::runtime_error("cannot read " + prefix + ".bin");
    const auto& layers = meta.at("layers");
    std::size_t layer = 0;
    params.for_each_tensor([&](const char* name, auto& t) {
        if (layer >= layers.size() || layers[layer].at("name").get<std::string>() != name
            || layers[layer].at("rows").get<Eigen::Index>() != t.rows()
            || layers[layer].at("cols").get<Eigen::Index>() != t.cols())
            throw std::runtime_error("encoder sidecar does not match layer " + std::string(name));
        bin.read(reinterpret_cast<char*>(t.data()), static_cast<std::streamsize>(t.size() * sizeof(float)));
        ++layer;
    });
    if (!bin)
        throw std::runtime_error(prefix + ".bin is truncated");

    return LoadedEncoder{Vae(std::move(params), meta.value("momentum", 0.9f)), meta.at("seed").get<std::uint64_t>(),
                         meta.at("pool_size").get<int>(), meta.at("channels").get<int>()};
}

} // namespace lenia_moqd::descriptor
