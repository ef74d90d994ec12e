#include <lenia_moqd/lenia/genome.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lenia_moqd::lenia {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw GenomeError("invalid genome: " + what);
}

bool in_closed(double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; }

// Orbium seed from the Lenia reference notebooks, 20 x 20.
constexpr int kOrbiumSize = 20;
constexpr std::array<double, kOrbiumSize * kOrbiumSize> kOrbiumCells = {
    0, 0, 0, 0, 0, 0, 0.1, 0.14, 0.1, 0, 0, 0.03, 0.03, 0, 0, 0.3, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0.08, 0.24, 0.3, 0.3, 0.18, 0.14, 0.15, 0.16, 0.15, 0.09, 0.2, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0.15, 0.34, 0.44, 0.46, 0.38, 0.18, 0.14, 0.11, 0.13, 0.19, 0.18, 0.45, 0, 0, 0,
    0, 0, 0, 0, 0.06, 0.13, 0.39, 0.5, 0.5, 0.37, 0.06, 0, 0, 0, 0.02, 0.16, 0.68, 0, 0, 0,
    0, 0, 0, 0.11, 0.17, 0.17, 0.33, 0.4, 0.38, 0.28, 0.14, 0, 0, 0, 0, 0, 0.18, 0.42, 0, 0,
    0, 0, 0.09, 0.18, 0.13, 0.06, 0.08, 0.26, 0.32, 0.32, 0.27, 0, 0, 0, 0, 0, 0, 0.82, 0, 0,
    0.27, 0, 0.16, 0.12, 0, 0, 0, 0.25, 0.38, 0.44, 0.45, 0.34, 0, 0, 0, 0, 0, 0.22, 0.17, 0,
    0, 0.07, 0.2, 0.02, 0, 0, 0, 0.31, 0.48, 0.57, 0.6, 0.57, 0, 0, 0, 0, 0, 0, 0.49, 0,
    0, 0.59, 0.19, 0, 0, 0, 0, 0.2, 0.57, 0.69, 0.76, 0.76, 0.49, 0, 0, 0, 0, 0, 0.36, 0,
    0, 0.58, 0.19, 0, 0, 0, 0, 0, 0.67, 0.83, 0.9, 0.92, 0.87, 0.12, 0, 0, 0, 0, 0.22, 0.07,
    0, 0, 0.46, 0, 0, 0, 0, 0, 0.7, 0.93, 1, 1, 1, 0.61, 0, 0, 0, 0, 0.18, 0.11,
    0, 0, 0.82, 0, 0, 0, 0, 0, 0.47, 1, 1, 0.98, 1, 0.96, 0.27, 0, 0, 0, 0.19, 0.1,
    0, 0, 0.46, 0, 0, 0, 0, 0, 0.25, 1, 1, 0.84, 0.92, 0.97, 0.54, 0.14, 0.04, 0.1, 0.21, 0.05,
    0, 0, 0, 0.4, 0, 0, 0, 0, 0.09, 0.8, 1, 0.82, 0.8, 0.85, 0.63, 0.31, 0.18, 0.19, 0.2, 0.01,
    0, 0, 0, 0.36, 0.1, 0, 0, 0, 0.05, 0.54, 0.86, 0.79, 0.74, 0.72, 0.6, 0.39, 0.28, 0.24, 0.13, 0,
    0, 0, 0, 0.01, 0.3, 0.07, 0, 0, 0.08, 0.36, 0.64, 0.7, 0.64, 0.6, 0.51, 0.39, 0.29, 0.19, 0.04, 0,
    0, 0, 0, 0, 0.1, 0.24, 0.14, 0.1, 0.15, 0.29, 0.45, 0.53, 0.52, 0.46, 0.4, 0.31, 0.21, 0.08, 0, 0,
    0, 0, 0, 0, 0, 0.08, 0.21, 0.21, 0.22, 0.29, 0.36, 0.39, 0.37, 0.33, 0.26, 0.18, 0.09, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0.03, 0.13, 0.19, 0.22, 0.24, 0.24, 0.23, 0.18, 0.13, 0.05, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0.02, 0.06, 0.08, 0.09, 0.07, 0.05, 0.01, 0, 0, 0, 0, 0,
};

} // namespace

void validate(const Genome& genome, const GridShape& shape)
{
    const int min_side = std::min(shape.height, shape.width);
    require(!genome.kernels.empty() && genome.kernels.size() <= kMaxKernels, "kernel count must be in [1, 16]");
    require(std::isfinite(genome.dt) && genome.dt > 0.0 && genome.dt <= 1.0, "dt must be in (0, 1]");
    require(genome.base_radius >= 2 && genome.base_radius <= min_side / 4,
            "base_radius must be in [2, min(H, W) / 4]");
    require(genome.seed_channels == shape.channels, "seed channel count must match grid channels");
    require(genome.seed_size >= 0 && genome.seed_size <= min_side / 2, "seed_size must be <= min(H, W) / 2");
    require(genome.seed_pattern.size()
                == static_cast<std::size_t>(genome.seed_size) * genome.seed_size * genome.seed_channels,
            "seed_pattern size mismatch");
    for (double v : genome.seed_pattern)
        require(in_closed(v, 0.0, 1.0), "seed values must be in [0, 1]");

    for (std::size_t k = 0; k < genome.kernels.size(); ++k) {
        const auto& spec = genome.kernels[k];
        const std::string where = "kernel " + std::to_string(k) + ": ";
        require(std::isfinite(spec.radius_fraction) && spec.radius_fraction > 0.0 && spec.radius_fraction <= 1.0,
                where + "radius_fraction must be in (0, 1]");
        require(spec.radius_fraction * genome.base_radius >= 1.0, where + "R * radius_fraction must be >= 1");
        require(!spec.rings.empty(), where + "at least one ring required");
        bool any_height = false;
        for (const auto& ring : spec.rings) {
            require(in_closed(ring.height, 0.0, 1.0), where + "ring height must be in [0, 1]");
            require(in_closed(ring.center, 0.0, 1.0), where + "ring center must be in [0, 1]");
            require(std::isfinite(ring.width) && ring.width > 0.0 && ring.width <= 0.5,
                    where + "ring width must be in (0, 0.5]");
            any_height = any_height || ring.height > 0.0;
        }
        require(any_height, where + "at least one ring must have height > 0");
        require(std::isfinite(spec.growth_mu), where + "growth_mu must be finite");
        require(std::isfinite(spec.growth_sigma) && spec.growth_sigma > 0.0, where + "growth_sigma must be > 0");
        require(in_closed(spec.weight, 0.0, 1.0), where + "weight must be in [0, 1]");
        require(spec.source_channel >= 0 && spec.source_channel < shape.channels, where + "source_channel out of range");
        require(spec.target_channel >= 0 && spec.target_channel < shape.channels, where + "target_channel out of range");
    }
}

Genome orbium()
{
    Genome g;
    g.kernels = {KernelSpec{}};
    g.dt = 0.1;
    g.base_radius = 13;
    g.seed_size = kOrbiumSize;
    g.seed_channels = 1;
    g.seed_pattern.assign(kOrbiumCells.begin(), kOrbiumCells.end());
    return g;
}

void to_json(nlohmann::json& j, const Ring& ring)
{
    j = nlohmann::json{{"height", ring.height}, {"center", ring.center}, {"width", ring.width}};
}

void from_json(const nlohmann::json& j, Ring& ring)
{
    j.at("height").get_to(ring.height);
    j.at("center").get_to(ring.center);
    j.at("width").get_to(ring.width);
}

void to_json(nlohmann::json& j, const KernelSpec& spec)
{
    j = nlohmann::json{{"radius_fraction", spec.radius_fraction},
                       {"rings", spec.rings},
                       {"growth_mu", spec.growth_mu},
                       {"growth_sigma", spec.growth_sigma},
                       {"weight", spec.weight},
                       {"source_channel", spec.source_channel},
                       {"target_channel", spec.target_channel}};
}

void from_json(const nlohmann::json& j, KernelSpec& spec)
{
    j.at("radius_fraction").get_to(spec.radius_fraction);
    j.at("rings").get_to(spec.rings);
    j.at("growth_mu").get_to(spec.growth_mu);
    j.at("growth_sigma").get_to(spec.growth_sigma);
    j.at("weight").get_to(spec.weight);
    j.at("source_channel").get_to(spec.source_channel);
    j.at("target_channel").get_to(spec.target_channel);
}

void to_json(nlohmann::json& j, const Genome& genome)
{
    j = nlohmann::json{{"kernels", genome.kernels},
                       {"dt", genome.dt},
                       {"base_radius", genome.base_radius},
                       {"seed_size", genome.seed_size},
                       {"seed_channels", genome.seed_channels},
                       {"seed_pattern", genome.seed_pattern}};
}

void from_json(const nlohmann::json& j, Genome& genome)
{
    j.at("kernels").get_to(genome.kernels);
    j.at("dt").get_to(genome.dt);
    j.at("base_radius").get_to(genome.base_radius);
    j.at("seed_size").get_to(genome.seed_size);
    j.at("seed_channels").get_to(genome.seed_channels);
    j.at("seed_pattern").get_to(genome.seed_pattern);
}

void save_genome(const std::string& path, const Genome& genome)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write genome file " + path);
    out << nlohmann::json(genome).dump(2) << '\n';
}

Genome load_genome(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read genome file " + path);
    return nlohmann::json::parse(in).get<Genome>();
}

} // namespace lenia_moqd::lenia
