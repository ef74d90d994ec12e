#pragma once

#include <lenia_moqd/archive/repertoire.hpp>
#include <lenia_moqd/descriptor/latent.hpp>
#include <lenia_moqd/descriptor/vae.hpp>
#include <lenia_moqd/evolve/config.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lenia_moqd::evolve {

/// Simulates a genome and pools the trace frames. Throws on invalid genomes
/// and descriptor::NumericError on non-finite frames.
descriptor::EncoderInputs develop(const lenia::Genome& genome, const EvolutionConfig& config);

/// Encodes developed frames and scores them against a frozen snapshot.
/// In homeostasis mode fitness == f1; otherwise fitness == -(dominators in snapshot).
archive::Individual score(lenia::Genome genome, std::shared_ptr<const descriptor::EncoderInputs> inputs,
                          std::string id, int generation, FitnessMode mode, const descriptor::Vae& encoder,
                          const archive::ArchiveSnapshot& snapshot, double sigma);

/// develop + score.
archive::Individual evaluate(const lenia::Genome& genome, std::string id, int generation,
                             const EvolutionConfig& config, const descriptor::Vae& encoder,
                             const archive::ArchiveSnapshot& snapshot, double sigma);

/// Recomputes every member's objectives against the rest of the archive and
/// re-ranks fitness under `mode`.
void reevaluate_archive(archive::Repertoire& repertoire, FitnessMode mode, double sigma);

struct EvaluationRecord {
    int generation = 0;
    int index = 0;
    std::string id;
    bool valid = false;
    bool inserted = false;
    fitness::ObjectiveVector objectives;
    double fitness = 0.0;
    std::string error;
};

struct GenerationLog {
    int generation = 0;
    std::size_t archive_size = 0;
    int inserted = 0;
    int valid = 0;
    double mean_f1 = 0.0;
    double mean_f2 = 0.0;
    double mean_f3 = 0.0;
    double mean_fitness = 0.0;
    /// Set on generations that trained the encoder.
    std::optional<double> encoder_loss;
};

struct GenerationResult {
    GenerationLog log;
    std::vector<EvaluationRecord> records;
    /// Evaluated individuals by batch index; empty for invalid ones.
    std::vector<std::optional<archive::Individual>> individuals;
    /// Archive state every individual in this generation was scored against.
    archive::ArchiveSnapshot snapshot;
    double sigma = 0.0;
};

/// Worker count: explicit value if > 0, else LENIA_MOQD_THREADS, else hardware concurrency.
int resolve_threads(int requested);

/// Generation loop: bootstrap at generation 0, then sample, mutate, evaluate
/// against a frozen snapshot, insert in index order, and refresh the encoder
/// on generations divisible by the refresh period.
class Engine {
public:
    explicit Engine(EvolutionConfig config);

    const EvolutionConfig& config() const { return config_; }
    const archive::Repertoire& repertoire() const { return repertoire_; }
    const descriptor::Vae& encoder() const { return encoder_; }
    /// Index of the next generation to run.
    int generation() const { return generation_; }
    bool finished() const { return generation_ >= config_.generations; }

    GenerationResult run_generation();

private:
    GenerationResult bootstrap();
    GenerationResult evolve_step();
    double current_sigma(const archive::ArchiveSnapshot& snapshot) const;
    void insert_batch(GenerationResult& result);
    void finish_log(GenerationResult& result) const;

    EvolutionConfig config_;
    int threads_;
    archive::Repertoire repertoire_;
    descriptor::Vae encoder_;
    int generation_ = 0;
};

} // namespace lenia_moqd::evolve
