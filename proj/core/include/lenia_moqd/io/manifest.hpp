#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lenia_moqd::io {

struct TrialEntry {
    std::uint64_t seed = 0;
    /// Trial directory relative to the manifest.
    std::string checkpoint;
    /// "pending", "running", "complete" or "failed".
    std::string status = "pending";
    std::string error;
};

struct RunManifest {
    std::string config_hash;
    std::string code_version;
    std::string mode;
    std::string started;
    std::string finished;
    /// "running", "partial" or "complete".
    std::string status = "running";
    std::vector<TrialEntry> trials;

    std::vector<std::uint64_t> seeds() const;
};

void to_json(nlohmann::json& j, const TrialEntry& e);
void from_json(const nlohmann::json& j, TrialEntry& e);
void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

/// Atomic replace via a temporary file.
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

const char* code_version();

} // namespace lenia_moqd::io
