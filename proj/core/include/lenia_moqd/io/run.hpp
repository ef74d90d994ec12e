#pragma once

#include <lenia_moqd/io/config_file.hpp>
#include <lenia_moqd/io/manifest.hpp>
#include <lenia_moqd/io/trial_io.hpp>
#include <lenia_moqd/metrics/summary.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace lenia_moqd::io {

struct TrialResult {
    TrialPaths paths;
    std::vector<evolve::GenerationLog> logs;
    metrics::TrialSummary summary;
};

using GenerationCallback = std::function<void(const evolve::GenerationLog&)>;

/// Runs every generation of one trial into `dir`: logs, periodic and final
/// checkpoints, summary.json and the objective plot. On failure the latest
/// state is checkpointed before the exception propagates.
TrialResult run_trial(const evolve::EvolutionConfig& config, const std::filesystem::path& dir,
                      const GenerationCallback& on_generation = {});

struct ExperimentRequest {
    LoadedConfig config;
    std::filesystem::path out;
    std::vector<std::uint64_t> seeds;
    std::optional<evolve::FitnessMode> mode;
};

/// One trial per seed under `out/seed_<s>/`, tracked by `out/manifest.json`.
/// A failed trial is recorded and the remaining seeds still run; the
/// manifest status is then "partial".
RunManifest run_experiment(const ExperimentRequest& request, std::ostream& progress);

} // namespace lenia_moqd::io
