#pragma once

#include <lenia_moqd/lenia/grid.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lenia_moqd::evolve {

/// Invalid configuration value or unknown key; `key()` is the dotted path.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(key + ": " + message), key_(std::move(key))
    {
    }
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

enum class FitnessMode { homeostasis, multi_objective };

std::string to_string(FitnessMode mode);
FitnessMode parse_fitness_mode(const std::string& text);

/// Per-parameter standard deviations of the Gaussian mutation.
struct MutationScales {
    double radius_fraction = 0.05;
    double ring_height = 0.05;
    double ring_center = 0.05;
    double ring_width = 0.01;
    double growth_mu = 0.01;
    double growth_sigma = 0.002;
    double weight = 0.05;
    double dt = 0.01;
    double base_radius = 0.5;
    double seed_pattern = 0.05;
};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

/// Uniform sampling ranges for bootstrap genomes.
struct InitRanges {
    int min_kernels = 1;
    int max_kernels = 3;
    int max_rings = 3;
    int seed_size = 16;
    int min_radius = 10;
    int max_radius = 16;
    Range radius_fraction{0.5, 1.0};
    Range ring_height{0.0, 1.0};
    Range ring_center{0.0, 1.0};
    Range ring_width{0.05, 0.3};
    Range growth_mu{0.1, 0.35};
    Range growth_sigma{0.01, 0.06};
    Range weight{0.3, 1.0};
    Range dt{0.1, 0.1};
    Range seed_value{0.0, 1.0};
};

struct EncoderConfig {
    int latent_dim = 8;
    int hidden = 256;
    int pool_size = 32;
    double learning_rate = 1e-3;
    double beta = 0.1;
    double momentum = 0.9;
    int batch_size = 32;
    int pretrain_steps = 500;
    int refresh_period = 50;
    int refresh_epochs = 3;
};

struct EvolutionConfig {
    int generations = 300;
    int batch_size = 16;
    int capacity = 128;
    FitnessMode fitness_mode = FitnessMode::multi_objective;
    lenia::GridShape grid{64, 64, 1};
    int steps = 200;
    int trace_samples = 8;
    double sigma = 1.0;
    bool adaptive_sigma = false;
    EncoderConfig encoder;
    MutationScales mutation;
    InitRanges init;
    int checkpoint_every = 50;
    std::uint64_t seed = 1;
    /// 0: LENIA_MOQD_THREADS or hardware concurrency.
    int threads = 0;

    /// Throws ConfigError naming the first offending key.
    void validate() const;
};

/// Desk-scale defaults (300 generations, batch 16, capacity 128, 64 x 64 grid).
EvolutionConfig desk_config();

void to_json(nlohmann::json& j, const EvolutionConfig& config);
/// Strict parse: unknown keys and wrong types raise ConfigError. Missing keys keep defaults.
EvolutionConfig config_from_json(const nlohmann::json& j);

} // namespace lenia_moqd::evolve
