#pragma once

#include <lenia_moqd/evolve/config.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lenia_moqd::io {

class ConfigNotFound : public std::runtime_error {
public:
    explicit ConfigNotFound(const std::filesystem::path& path)
        : std::runtime_error("config not found: " + path.string())
    {
    }
};

struct LoadedConfig {
    evolve::EvolutionConfig config;
    /// Parsed file contents; dump() of this is the canonical form.
    nlohmann::json source;
    std::string hash;
};

/// Throws ConfigNotFound, or evolve::ConfigError for malformed JSON and invalid values.
LoadedConfig load_config(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

/// SHA-256 of the canonical (sorted-key, compact) serialization.
std::string config_hash(const nlohmann::json& config);

/// Dotted paths of leaves that differ between two configs, skipping `ignored` paths.
std::vector<std::string> config_differences(const nlohmann::json& a, const nlohmann::json& b,
                                            const std::set<std::string>& ignored = {});

} // namespace lenia_moqd::io
