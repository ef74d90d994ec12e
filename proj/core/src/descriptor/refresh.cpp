#include <lenia_moqd/descriptor/refresh.hpp>

#include <algorithm>
#include <numeric>

namespace lenia_moqd::descriptor {

namespace {

Eigen::MatrixXf gather(const std::vector<Eigen::VectorXf>& frames, std::span<const std::size_t> picks)
{
    Eigen::MatrixXf batch(frames.front().size(), static_cast<Eigen::Index>(picks.size()));
    for (std::size_t j = 0; j < picks.size(); ++j)
        batch.col(static_cast<Eigen::Index>(j)) = frames[picks[j]];
    return batch;
}

} // namespace

LatentTrace encode_trace(const EncoderInputs& inputs, const Vae& vae)
{
    LatentTrace trace;
    trace.frame_indices = inputs.frame_indices;
    trace.encodings.reserve(inputs.frames.size());
    for (const auto& f : inputs.frames)
        trace.encodings.push_back(vae.encode(f).cast<double>());
    return trace;
}

RefreshResult train_epochs(Vae& vae, const std::vector<Eigen::VectorXf>& frames, const RefreshOptions& options,
                           std::mt19937_64& rng)
{
    RefreshResult result;
    if (frames.empty() || options.epochs <= 0)
        return result;
    const auto batch = static_cast<std::size_t>(std::max(1, options.batch_size));
    std::vector<std::size_t> order(frames.size());
    double loss_sum = 0.0;
    for (int e = 0; e < options.epochs; ++e) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const auto n = std::min(batch, order.size() - start);
            const auto loss = vae.train_step(gather(frames, std::span(order).subspan(start, n)),
                                             options.learning_rate, options.beta, rng);
            loss_sum += loss.total;
            ++result.train_steps;
        }
    }
    result.mean_loss = loss_sum / result.train_steps;
    return result;
}

RefreshResult train_steps(Vae& vae, const std::vector<Eigen::VectorXf>& frames, int steps, int batch_size,
                          float learning_rate, float beta, std::mt19937_64& rng)
{
    RefreshResult result;
    if (frames.empty() || steps <= 0)
        return result;
    std::uniform_int_distribution<std::size_t> pick(0, frames.size() - 1);
    std::vector<std::size_t> picks(static_cast<std::size_t>(std::max(1, batch_size)));
    double loss_sum = 0.0;
    for (int s = 0; s < steps; ++s) {
        for (auto& p : picks)
            p = pick(rng);
        loss_sum += vae.train_step(gather(frames, picks), learning_rate, beta, rng).total;
        ++result.train_steps;
    }
    result.mean_loss = loss_sum / result.train_steps;
    return result;
}

void reencode(archive::Repertoire& repertoire, const Vae& vae)
{
    for (auto& m : repertoire.mutable_members()) {
        if (!m.inputs)
            throw std::logic_error("member " + m.id + " has no cached encoder inputs");
        m.trace = encode_trace(*m.inputs, vae);
        m.descriptor = m.trace.encodings.back();
    }
    repertoire.recompute_statistics();
}

RefreshResult refresh(archive::Repertoire& repertoire, Vae& vae, const RefreshOptions& options,
                      std::mt19937_64& rng)
{
    if (repertoire.empty())
        throw archive::EmptyRepertoireError();
    std::vector<Eigen::VectorXf> finals;
    finals.reserve(repertoire.size());
    for (const auto& m : repertoire.members()) {
        if (!m.inputs)
            throw std::logic_error("member " + m.id + " has no cached encoder inputs");
        finals.push_back(m.inputs->final_frame());
    }
    const auto result = train_epochs(vae, finals, options, rng);
    reencode(repertoire, vae);
    return result;
}

} // namespace lenia_moqd::descriptor
