#pragma once

#include <lenia_moqd/lenia/grid.hpp>

#include <nlohmann/json_fwd.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace lenia_moqd::lenia {

class GenomeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One Gaussian shell of a kernel: height b, center a and width w, in units of the kernel radius.
struct Ring {
    double height = 1.0;
    double center = 0.5;
    double width = 0.15;

    bool operator==(const Ring&) const = default;
};

struct KernelSpec {
    double radius_fraction = 1.0;
    std::vector<Ring> rings{Ring{}};
    double growth_mu = 0.15;
    double growth_sigma = 0.015;
    double weight = 1.0;
    int source_channel = 0;
    int target_channel = 0;

    bool operator==(const KernelSpec&) const = default;
};

inline constexpr std::size_t kMaxKernels = 16;

/// Rule parameters plus the seed pattern placed at the grid center on frame 0.
struct Genome {
    std::vector<KernelSpec> kernels;
    double dt = 0.1;
    int base_radius = 13;
    int seed_size = 0;
    int seed_channels = 1;
    /// seed_channels x seed_size x seed_size values, channel-major.
    std::vector<double> seed_pattern;

    double seed(int c, int y, int x) const
    {
        return seed_pattern[(static_cast<std::size_t>(c) * seed_size + y) * seed_size + x];
    }
    double& seed(int c, int y, int x)
    {
        return seed_pattern[(static_cast<std::size_t>(c) * seed_size + y) * seed_size + x];
    }

    bool operator==(const Genome&) const = default;
};

/// Throws GenomeError describing the first violated range for this grid.
void validate(const Genome& genome, const GridShape& shape);

/// The single-ring Orbium glider (R = 13, dt = 0.1, mu = 0.15, sigma = 0.015) on one channel.
Genome orbium();

void to_json(nlohmann::json& j, const Ring& ring);
void from_json(const nlohmann::json& j, Ring& ring);
void to_json(nlohmann::json& j, const KernelSpec& spec);
void from_json(const nlohmann::json& j, KernelSpec& spec);
void to_json(nlohmann::json& j, const Genome& genome);
void from_json(const nlohmann::json& j, Genome& genome);

void save_genome(const std::string& path, const Genome& genome);
Genome load_genome(const std::string& path);

} // namespace lenia_moqd::lenia
