#pragma once

#include <lenia_moqd/fitness/objectives.hpp>
#include <lenia_moqd/lenia/genome.hpp>
#include <lenia_moqd/lenia/grid.hpp>
#include <lenia_moqd/lenia/kernel.hpp>

#include <Eigen/Core>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lenia_moqd::support {

/// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("lenia_moqd_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Toroidal convolution by explicit summation: out(y, x) = sum_j k(j) a(y - j).
inline std::vector<double> direct_convolve(std::span<const double> a, std::span<const double> k, int h, int w)
{
    std::vector<double> out(static_cast<std::size_t>(h) * w, 0.0);
    for (int ky = 0; ky < h; ++ky)
        for (int kx = 0; kx < w; ++kx) {
            const double kv = k[static_cast<std::size_t>(ky) * w + kx];
            if (kv == 0.0)
                continue;
            for (int y = 0; y < h; ++y) {
                const int sy = ((y - ky) % h + h) % h;
                for (int x = 0; x < w; ++x) {
                    const int sx = ((x - kx) % w + w) % w;
                    out[static_cast<std::size_t>(y) * w + x] += kv * a[static_cast<std::size_t>(sy) * w + sx];
                }
            }
        }
    return out;
}

/// One Lenia update computed with direct convolutions.
inline lenia::GridState direct_step(const lenia::GridState& state, const lenia::Genome& genome)
{
    const auto& shape = state.shape();
    std::vector<double> delta(shape.values(), 0.0);
    for (const auto& spec : genome.kernels) {
        const auto kernel = lenia::build_kernel(spec, genome.base_radius, shape.height, shape.width);
        const auto u = direct_convolve(state.channel(spec.source_channel), kernel.spatial, shape.height, shape.width);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double z = (u[i] - spec.growth_mu) / spec.growth_sigma;
            delta[spec.target_channel * shape.cells() + i] += spec.weight * (2.0 * std::exp(-0.5 * z * z) - 1.0);
        }
    }
    lenia::GridState next = state;
    auto values = next.data();
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::min(1.0, std::max(0.0, values[i] + genome.dt * delta[i]));
    return next;
}

inline bool naive_dominates(const fitness::ObjectiveVector& a, const fitness::ObjectiveVector& b)
{
    const double av[3] = {a.homeostasis, a.distinctiveness, a.sparsity};
    const double bv[3] = {b.homeostasis, b.distinctiveness, b.sparsity};
    bool strict = false;
    for (int i = 0; i < 3; ++i) {
        if (av[i] < bv[i])
            return false;
        if (av[i] > bv[i])
            strict = true;
    }
    return strict;
}

inline double naive_domination_fitness(const fitness::ObjectiveVector& x,
                                       std::span<const fitness::ObjectiveVector> archive)
{
    int count = 0;
    for (const auto& a : archive)
        if (naive_dominates(a, x))
            ++count;
    return -static_cast<double>(count);
}

/// Objectives drawn from a small value set so ties are common.
inline fitness::ObjectiveVector random_objectives(std::mt19937_64& rng, bool coarse)
{
    if (coarse) {
        std::uniform_int_distribution<int> level(0, 3);
        return {-0.25 * level(rng), 0.25 * level(rng), -0.25 * level(rng)};
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {-u(rng), u(rng), -u(rng)};
}

inline lenia::GridState random_state(const lenia::GridShape& shape, std::mt19937_64& rng)
{
    lenia::GridState s(shape);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : s.data())
        v = u(rng);
    return s;
}

} // namespace lenia_moqd::support
