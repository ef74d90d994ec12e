#include <lenia_moqd/lenia/simulator.hpp>

#include <algorithm>
#include <stdexcept>

namespace lenia_moqd::lenia {

GridState initial_state(const Genome& genome, const GridShape& shape)
{
    GridState state(shape);
    const int s = genome.seed_size;
    const int oy = (shape.height - s) / 2;
    const int ox = (shape.width - s) / 2;
    const int channels = std::min(genome.seed_channels, shape.channels);
    for (int c = 0; c < channels; ++c)
        for (int y = 0; y < s; ++y)
            for (int x = 0; x < s; ++x)
                state.at(c, oy + y, ox + x) = genome.seed(c, y, x);
    return state;
}

Simulator::Simulator(Genome genome, GridShape shape)
    : genome_(std::move(genome)), shape_(shape), fft_(shape.height, shape.width)
{
    validate(genome_, shape_);
    kernels_ = build_kernels(genome_, fft_);

    source_used_.assign(static_cast<std::size_t>(shape_.channels), false);
    for (const auto& k : genome_.kernels)
        source_used_[static_cast<std::size_t>(k.source_channel)] = true;
    channel_spectra_.resize(static_cast<std::size_t>(shape_.channels));
    for (std::size_t c = 0; c < channel_spectra_.size(); ++c)
        if (source_used_[c])
            channel_spectra_[c].resize(fft_.spectrum_size());
    product_.resize(fft_.spectrum_size());
    potential_.resize(shape_.cells());
    delta_.resize(shape_.values());
}

void Simulator::advance(GridState& state)
{
    if (!(state.shape() == shape_))
        throw std::invalid_argument("grid shape does not match simulator");

    for (int c = 0; c < shape_.channels; ++c)
        if (source_used_[static_cast<std::size_t>(c)])
            fft_.forward(state.channel(c), channel_spectra_[static_cast<std::size_t>(c)]);

    std::fill(delta_.begin(), delta_.end(), 0.0);
    const std::size_t cells = shape_.cells();
    for (std::size_t k = 0; k < kernels_.size(); ++k) {
        const auto& spec = genome_.kernels[k];
        const auto& source = channel_spectra_[static_cast<std::size_t>(spec.source_channel)];
        const auto& kspec = kernels_[k].spectrum;
        for (std::size_t i = 0; i < product_.size(); ++i)
            product_[i] = source[i] * kspec[i];
        fft_.inverse(product_, potential_);

        double* target = delta_.data() + static_cast<std::size_t>(spec.target_channel) * cells;
        for (std::size_t i = 0; i < cells; ++i)
            target[i] += spec.weight * growth(potential_[i], spec.growth_mu, spec.growth_sigma);
    }

    auto values = state.data();
    const double dt = genome_.dt;
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::clamp(values[i] + dt * delta_[i], 0.0, 1.0);
}

GridState Simulator::step(const GridState& state)
{
    GridState next = state;
    advance(next);
    return next;
}

GridState step(const GridState& state, const Genome& genome, std::span<const BuiltKernel> kernels)
{
    const auto& shape = state.shape();
    if (kernels.size() != genome.kernels.size())
        throw std::invalid_argument("kernel count does not match genome");
    const RealFft2d fft(shape.height, shape.width);
    const std::size_t cells = shape.cells();

    std::vector<std::complex<double>> source(fft.spectrum_size());
    std::vector<std::complex<double>> product(fft.spectrum_size());
    std::vector<double> potential(cells);
    std::vector<double> delta(shape.values(), 0.0);

    for (std::size_t k = 0; k < kernels.size(); ++k) {
        const auto& spec = genome.kernels[k];
        if (kernels[k].height != shape.height || kernels[k].width != shape.width)
            throw std::invalid_argument("kernel dimensions do not match grid");
        fft.forward(state.channel(spec.source_channel), source);
        for (std::size_t i = 0; i < product.size(); ++i)
            product[i] = source[i] * kernels[k].spectrum[i];
        fft.inverse(product, potential);
        double* target = delta.data() + static_cast<std::size_t>(spec.target_channel) * cells;
        for (std::size_t i = 0; i < cells; ++i)
            target[i] += spec.weight * growth(potential[i], spec.growth_mu, spec.growth_sigma);
    }

    GridState next = state;
    auto values = next.data();
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::clamp(values[i] + genome.dt * delta[i], 0.0, 1.0);
    return next;
}

void simulate_each(const Genome& genome, const GridShape& shape, int steps,
                   const std::function<void(int, const GridState&)>& visit)
{
    if (steps < 1)
        throw std::invalid_argument("rollout length must be >= 1");
    Simulator sim(genome, shape);
    GridState state = sim.initial_state();
    visit(0, state);
    for (int t = 1; t <= steps; ++t) {
        sim.advance(state);
        visit(t, state);
    }
}

Rollout simulate(const Genome& genome, const GridShape& shape, int steps, std::string genome_id)
{
    Rollout rollout;
    rollout.genome_id = std::move(genome_id);
    rollout.frames.reserve(static_cast<std::size_t>(steps) + 1);
    simulate_each(genome, shape, steps, [&](int, const GridState& s) { rollout.frames.push_back(s); });
    return rollout;
}

} // namespace lenia_moqd::lenia
