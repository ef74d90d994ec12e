#include <lenia_moqd/evolve/mutation.hpp>

#include <algorithm>
#include <cmath>

namespace lenia_moqd::evolve {

namespace {

class Perturber {
public:
    explicit Perturber(std::mt19937_64& rng) : rng_(rng) {}

    void operator()(double& value, double scale, double lo, double hi)
    {
        if (scale <= 0.0)
            return;
        value = std::clamp(value + scale * normal_(rng_), lo, hi);
    }

private:
    std::mt19937_64& rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

double uniform(std::mt19937_64& rng, const Range& r)
{
    if (r.lo == r.hi)
        return r.lo;
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

} // namespace

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t index, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(generation), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

lenia::Genome mutate(const lenia::Genome& parent, const MutationScales& scales, const lenia::GridShape& shape,
                     std::mt19937_64& rng)
{
    lenia::Genome child = parent;
    Perturber perturb(rng);

    const int max_radius = std::max(2, std::min(shape.height, shape.width) / 4);
    double radius = child.base_radius;
    perturb(radius, scales.base_radius, 2.0, static_cast<double>(max_radius));
    child.base_radius = static_cast<int>(std::lround(radius));
    const double min_fraction = 1.0 / child.base_radius;

    perturb(child.dt, scales.dt, 1e-3, 1.0);

    for (std::size_t k = 0; k < child.kernels.size(); ++k) {
        auto& spec = child.kernels[k];
        perturb(spec.radius_fraction, scales.radius_fraction, min_fraction, 1.0);
        spec.radius_fraction = std::clamp(spec.radius_fraction, min_fraction, 1.0);
        for (auto& ring : spec.rings) {
            perturb(ring.height, scales.ring_height, 0.0, 1.0);
            perturb(ring.center, scales.ring_center, 0.0, 1.0);
            perturb(ring.width, scales.ring_width, 1e-3, 0.5);
        }
        const bool alive = std::any_of(spec.rings.begin(), spec.rings.end(), [](const auto& r) { return r.height > 0.0; });
        if (!alive)
            for (std::size_t r = 0; r < spec.rings.size(); ++r)
                spec.rings[r].height = parent.kernels[k].rings[r].height;
        perturb(spec.growth_mu, scales.growth_mu, 0.0, 1.0);
        perturb(spec.growth_sigma, scales.growth_sigma, 1e-3, 1.0);
        perturb(spec.weight, scales.weight, 0.0, 1.0);
    }

    for (double& v : child.seed_pattern)
        perturb(v, scales.seed_pattern, 0.0, 1.0);
    return child;
}

lenia::Genome random_genome(const InitRanges& r, const lenia::GridShape& shape, std::mt19937_64& rng)
{
    lenia::Genome g;
    const int side = std::min(shape.height, shape.width);
    const int hi_radius = std::clamp(r.max_radius, 2, std::max(2, side / 4));
    g.base_radius = uniform_int(rng, std::clamp(r.min_radius, 2, hi_radius), hi_radius);
    g.dt = uniform(rng, r.dt);
    const int kernels = uniform_int(rng, r.min_kernels, r.max_kernels);
    for (int k = 0; k < kernels; ++k) {
        lenia::KernelSpec spec;
        spec.radius_fraction = std::max(uniform(rng, r.radius_fraction), 1.0 / g.base_radius);
        spec.rings.clear();
        const int rings = uniform_int(rng, 1, r.max_rings);
        for (int i = 0; i < rings; ++i)
            spec.rings.push_back(
                lenia::Ring{uniform(rng, r.ring_height), uniform(rng, r.ring_center), uniform(rng, r.ring_width)});
        if (std::none_of(spec.rings.begin(), spec.rings.end(), [](const auto& ring) { return ring.height > 0.0; }))
            spec.rings.front().height = r.ring_height.hi;
        spec.growth_mu = uniform(rng, r.growth_mu);
        spec.growth_sigma = uniform(rng, r.growth_sigma);
        spec.weight = uniform(rng, r.weight);
        spec.source_channel = uniform_int(rng, 0, shape.channels - 1);
        spec.target_channel = uniform_int(rng, 0, shape.channels - 1);
        g.kernels.push_back(std::move(spec));
    }
    g.seed_size = std::min(r.seed_size, side / 2);
    g.seed_channels = shape.channels;
    g.seed_pattern.resize(static_cast<std::size_t>(g.seed_size) * g.seed_size * g.seed_channels);
    for (double& v : g.seed_pattern)
        v = uniform(rng, r.seed_value);
    return g;
}

} // namespace lenia_moqd::evolve
