#include <lenia_moqd/io/run.hpp>

#include <lenia_moqd/io/logs.hpp>
#include <lenia_moqd/io/plot.hpp>

namespace lenia_moqd::io {

namespace fs = std::filesystem;

TrialResult run_trial(const evolve::EvolutionConfig& config, const fs::path& dir,
                      const GenerationCallback& on_generation)
{
    TrialResult result;
    result.paths = TrialPaths{dir};
    fs::create_directories(dir);
    evolve::Engine engine(config);
    TrialLogWriter writer(result.paths.generations_csv(), result.paths.evaluations_csv());

    try {
        while (!engine.finished()) {
            const auto gen = engine.run_generation();
            writer.append(gen);
            result.logs.push_back(gen.log);
            if (on_generation)
                on_generation(gen.log);
            if (config.checkpoint_every > 0 && engine.generation() % config.checkpoint_every == 0)
                save_checkpoint(result.paths, engine);
        }
    } catch (...) {
        try {
            save_checkpoint(result.paths, engine);
            write_trajectory_svg(result.paths.trajectory_svg(), result.logs);
        } catch (...) {
        }
        throw;
    }
    save_checkpoint(result.paths, engine);
    write_trajectory_svg(result.paths.trajectory_svg(), result.logs);

    const metrics::MeasureOptions options{config.grid, config.steps, config.encoder.pool_size,
                                          evolve::resolve_threads(config.threads)};
    const auto members = metrics::measure_members(engine.repertoire(), engine.encoder(), options);
    result.summary = metrics::summarize(members, evolve::to_string(config.fitness_mode), config.seed);
    write_json(result.paths.summary(), result.summary);
    return result;
}

RunManifest run_experiment(const ExperimentRequest& request, std::ostream& progress)
{
    fs::create_directories(request.out);
    const auto manifest_path = request.out / "manifest.json";
    const auto mode = request.mode.value_or(request.config.config.fitness_mode);

    RunManifest manifest;
    manifest.config_hash = request.config.hash;
    manifest.code_version = code_version();
    manifest.mode = evolve::to_string(mode);
    manifest.started = utc_timestamp();
    for (auto seed : request.seeds)
        manifest.trials.push_back(TrialEntry{seed, trial_dir_name(seed), "pending", {}});
    write_manifest(manifest_path, manifest);

    bool failed = false;
    for (auto& trial : manifest.trials) {
        auto config = request.config.config;
        config.seed = trial.seed;
        config.fitness_mode = mode;
        trial.status = "running";
        write_manifest(manifest_path, manifest);
        progress << "seed " << trial.seed << ": " << config.generations << " generations, mode "
                 << manifest.mode << '\n';
        try {
            const auto result = run_trial(config, request.out / trial.checkpoint);
            trial.status = "complete";
            progress << "seed " << trial.seed << ": archive " << result.summary.members << ", variance "
                     << result.summary.repertoire_variance << '\n';
        } catch (const std::exception& e) {
            failed = true;
            trial.status = "failed";
            trial.error = e.what();
            progress << "seed " << trial.seed << " failed: " << e.what() << '\n';
        }
        write_manifest(manifest_path, manifest);
    }
    manifest.finished = utc_timestamp();
    manifest.status = failed ? "partial" : "complete";
    write_manifest(manifest_path, manifest);
    return manifest;
}

} // namespace lenia_moqd::io
