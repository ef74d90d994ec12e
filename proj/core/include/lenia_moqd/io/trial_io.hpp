#pragma once

#include <lenia_moqd/archive/repertoire.hpp>
#include <lenia_moqd/descriptor/vae.hpp>
#include <lenia_moqd/evolve/config.hpp>
#include <lenia_moqd/evolve/engine.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>

namespace lenia_moqd::io {

/// File layout of one trial directory.
struct TrialPaths {
    std::filesystem::path dir;

    std::filesystem::path config() const { return dir / "config.json"; }
    std::filesystem::path state() const { return dir / "state.json"; }
    std::filesystem::path repertoire() const { return dir / "repertoire.jsonl"; }
    /// encoder.bin + encoder.json
    std::filesystem::path encoder_prefix() const { return dir / "encoder"; }
    std::filesystem::path generations_csv() const { return dir / "generations.csv"; }
    std::filesystem::path evaluations_csv() const { return dir / "evaluations.csv"; }
    std::filesystem::path summary() const { return dir / "summary.json"; }
    std::filesystem::path trajectory_svg() const { return dir / "objectives.svg"; }
};

/// Name of the per-seed directory under a run's output directory.
std::string trial_dir_name(std::uint64_t seed);

/// Writes config, archive, encoder and the generation counter. Each file is
/// replaced atomically.
void save_checkpoint(const TrialPaths& paths, const evolve::Engine& engine);

struct TrialCheckpoint {
    evolve::EvolutionConfig config;
    nlohmann::json config_json;
    archive::Repertoire repertoire;
    descriptor::Vae encoder;
    /// Generations completed when the checkpoint was written.
    int generation = 0;
};

/// Accepts a trial directory or any file inside one (e.g. repertoire.jsonl).
TrialCheckpoint load_checkpoint(const std::filesystem::path& path);

/// Resolves `path` to its trial directory.
std::filesystem::path trial_dir_of(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

} // namespace lenia_moqd::io
