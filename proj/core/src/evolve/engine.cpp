#include <lenia_moqd/evolve/engine.hpp>

#include <lenia_moqd/descriptor/pooling.hpp>
#include <lenia_moqd/descriptor/refresh.hpp>
#include <lenia_moqd/evolve/mutation.hpp>
#include <lenia_moqd/evolve/parallel.hpp>
#include <lenia_moqd/fitness/objectives.hpp>
#include <lenia_moqd/lenia/simulator.hpp>

#include <cstdlib>
#include <string>
#include <thread>

namespace lenia_moqd::evolve {

namespace {

// RNG stream tags; per-individual streams use the batch index instead.
constexpr std::uint64_t kParentStream = 1;
constexpr std::uint64_t kRefreshStream = 2;
constexpr std::uint64_t kPretrainStream = 3;
constexpr std::uint64_t kBootstrapStream = 4;
constexpr std::uint64_t kMutationStream = 5;

descriptor::Vae make_encoder(const EvolutionConfig& c)
{
    const descriptor::VaeShape shape{descriptor::pooled_length(c.grid, c.encoder.pool_size), c.encoder.hidden,
                                     c.encoder.latent_dim};
    return descriptor::Vae(shape, c.seed, static_cast<float>(c.encoder.momentum));
}

std::string make_id(int generation, std::size_t index)
{
    return "g" + std::to_string(generation) + "-" + std::to_string(index);
}

} // namespace

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("LENIA_MOQD_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

descriptor::EncoderInputs develop(const lenia::Genome& genome, const EvolutionConfig& config)
{
    descriptor::EncoderInputs inputs;
    inputs.frame_indices = descriptor::trace_frame_indices(config.steps, config.trace_samples);
    inputs.frames.reserve(inputs.frame_indices.size());
    std::size_t next = 0;
    lenia::simulate_each(genome, config.grid, config.steps, [&](int t, const lenia::GridState& state) {
        if (next >= inputs.frame_indices.size() || inputs.frame_indices[next] != t)
            return;
        if (!state.all_finite())
            throw descriptor::NumericError("non-finite rollout at step " + std::to_string(t));
        const auto pooled = descriptor::pool_frame(state, config.encoder.pool_size);
        while (next < inputs.frame_indices.size() && inputs.frame_indices[next] == t) {
            inputs.frames.push_back(pooled);
            ++next;
        }
    });
    return inputs;
}

archive::Individual score(lenia::Genome genome, std::shared_ptr<const descriptor::EncoderInputs> inputs,
                          std::string id, int generation, FitnessMode mode, const descriptor::Vae& encoder,
                          const archive::ArchiveSnapshot& snapshot, double sigma)
{
    archive::Individual ind;
    ind.id = std::move(id);
    ind.genome = std::move(genome);
    ind.birth_generation = generation;
    ind.trace = descriptor::encode_trace(*inputs, encoder);
    ind.descriptor = ind.trace.encodings.back();
    ind.inputs = std::move(inputs);

    const Eigen::VectorXd mean = snapshot.mean.size() == ind.descriptor.size()
        ? snapshot.mean
        : Eigen::VectorXd::Zero(ind.descriptor.size());
    ind.objectives.homeostasis = fitness::homeostasis(ind.trace);
    ind.objectives.distinctiveness = fitness::distinctiveness(ind.trace.mean(), mean);
    ind.objectives.sparsity = fitness::sparsity(ind.descriptor, snapshot.descriptors, sigma);
    ind.fitness = mode == FitnessMode::homeostasis ? ind.objectives.homeostasis
                                                   : fitness::domination_fitness(ind.objectives, snapshot.objectives);
    return ind;
}

archive::Individual evaluate(const lenia::Genome& genome, std::string id, int generation,
                             const EvolutionConfig& config, const descriptor::Vae& encoder,
                             const archive::ArchiveSnapshot& snapshot, double sigma)
{
    auto inputs = std::make_shared<const descriptor::EncoderInputs>(develop(genome, config));
    return score(genome, std::move(inputs), std::move(id), generation, config.fitness_mode, encoder, snapshot, sigma);
}

void reevaluate_archive(archive::Repertoire& repertoire, FitnessMode mode, double sigma)
{
    auto members = repertoire.mutable_members();
    const auto& mean = repertoire.archive_mean();
    std::vector<Eigen::VectorXd> others;
    others.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < members.size(); ++j)
            if (j != i)
                others.push_back(members[j].descriptor);
        auto& m = members[i];
        m.objectives.homeostasis = fitness::homeostasis(m.trace);
        m.objectives.distinctiveness = fitness::distinctiveness(m.trace_mean(), mean);
        m.objectives.sparsity = fitness::sparsity(m.descriptor, others, sigma);
    }
    std::vector<fitness::ObjectiveVector> objectives;
    objectives.reserve(members.size());
    for (const auto& m : members)
        objectives.push_back(m.objectives);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (mode == FitnessMode::homeostasis) {
            members[i].fitness = members[i].objectives.homeostasis;
        } else {
            // A member never dominates itself, so counting over the whole set is exact.
            members[i].fitness = fitness::domination_fitness(members[i].objectives, objectives);
        }
    }
}

Engine::Engine(EvolutionConfig config)
    : config_(std::move(config)),
      threads_(resolve_threads(config_.threads)),
      repertoire_(static_cast<std::size_t>(config_.capacity), config_.encoder.latent_dim),
      encoder_(make_encoder(config_))
{
    config_.validate();
}

GenerationResult Engine::run_generation()
{
    if (finished())
        throw std::logic_error("all generations have already run");
    auto result = generation_ == 0 ? bootstrap() : evolve_step();
    ++generation_;
    return result;
}

double Engine::current_sigma(const archive::ArchiveSnapshot& snapshot) const
{
    return config_.adaptive_sigma ? fitness::median_heuristic_sigma(snapshot.descriptors) : config_.sigma;
}

GenerationResult Engine::bootstrap()
{
    const auto batch = static_cast<std::size_t>(config_.batch_size);
    GenerationResult result;
    result.log.generation = 0;
    result.snapshot = repertoire_.snapshot();
    result.sigma = current_sigma(result.snapshot);
    result.records.resize(batch);
    result.individuals.resize(batch);

    std::vector<lenia::Genome> genomes(batch);
    std::vector<std::shared_ptr<const descriptor::EncoderInputs>> inputs(batch);
    parallel_for(batch, threads_, [&](std::size_t i) {
        auto rng = make_rng(config_.seed, 0, i, kBootstrapStream);
        genomes[i] = random_genome(config_.init, config_.grid, rng);
        auto& rec = result.records[i];
        rec.generation = 0;
        rec.index = static_cast<int>(i);
        rec.id = make_id(0, i);
        try {
            inputs[i] = std::make_shared<const descriptor::EncoderInputs>(develop(genomes[i], config_));
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    });

    std::vector<Eigen::VectorXf> frames;
    for (const auto& in : inputs)
        if (in)
            frames.insert(frames.end(), in->frames.begin(), in->frames.end());
    if (!frames.empty() && config_.encoder.pretrain_steps > 0) {
        auto rng = make_rng(config_.seed, 0, 0, kPretrainStream);
        const auto pre = descriptor::train_steps(encoder_, frames, config_.encoder.pretrain_steps,
                                                 config_.encoder.batch_size,
                                                 static_cast<float>(config_.encoder.learning_rate),
                                                 static_cast<float>(config_.encoder.beta), rng);
        result.log.encoder_loss = pre.mean_loss;
    }

    parallel_for(batch, threads_, [&](std::size_t i) {
        if (!inputs[i])
            return;
        try {
            result.individuals[i] = score(genomes[i], inputs[i], result.records[i].id, 0, config_.fitness_mode,
                                          encoder_, result.snapshot, result.sigma);
        } catch (const std::exception& e) {
            result.records[i].error = e.what();
        }
    });

    insert_batch(result);
    finish_log(result);
    return result;
}

GenerationResult Engine::evolve_step()
{
    const int gen = generation_;
    const auto batch = static_cast<std::size_t>(config_.batch_size);
    GenerationResult result;
    result.log.generation = gen;
    result.records.resize(batch);
    result.individuals.resize(batch);

    if (repertoire_.empty()) {
        finish_log(result);
        return result;
    }

    result.snapshot = repertoire_.snapshot();
    result.sigma = current_sigma(result.snapshot);
    auto parent_rng = make_rng(config_.seed, static_cast<std::uint64_t>(gen), 0, kParentStream);
    const auto parents = repertoire_.sample_parent_indices(batch, parent_rng);
    const auto members = repertoire_.members();

    parallel_for(batch, threads_, [&](std::size_t i) {
        auto& rec = result.records[i];
        rec.generation = gen;
        rec.index = static_cast<int>(i);
        rec.id = make_id(gen, i);
        try {
            auto rng = make_rng(config_.seed, static_cast<std::uint64_t>(gen), i, kMutationStream);
            auto child = mutate(members[parents[i]].genome, config_.mutation, config_.grid, rng);
            result.individuals[i]
                = evaluate(child, rec.id, gen, config_, encoder_, result.snapshot, result.sigma);
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    });

    insert_batch(result);

    if (gen % config_.encoder.refresh_period == 0 && !repertoire_.empty()) {
        auto rng = make_rng(config_.seed, static_cast<std::uint64_t>(gen), 0, kRefreshStream);
        descriptor::RefreshOptions options;
        options.epochs = config_.encoder.refresh_epochs;
        options.batch_size = config_.encoder.batch_size;
        options.learning_rate = static_cast<float>(config_.encoder.learning_rate);
        options.beta = static_cast<float>(config_.encoder.beta);
        const auto refreshed = descriptor::refresh(repertoire_, encoder_, options, rng);
        reevaluate_archive(repertoire_, config_.fitness_mode, current_sigma(repertoire_.snapshot()));
        if (refreshed.train_steps > 0)
            result.log.encoder_loss = refreshed.mean_loss;
    }

    finish_log(result);
    return result;
}

void Engine::insert_batch(GenerationResult& result)
{
    for (std::size_t i = 0; i < result.individuals.size(); ++i) {
        auto& rec = result.records[i];
        auto& ind = result.individuals[i];
        if (!ind)
            continue;
        rec.valid = true;
        rec.objectives = ind->objectives;
        rec.fitness = ind->fitness;
        rec.inserted = repertoire_.try_insert(*ind).inserted;
        if (rec.inserted)
            ++result.log.inserted;
    }
}

void Engine::finish_log(GenerationResult& result) const
{
    auto& log = result.log;
    log.archive_size = repertoire_.size();
    double f1 = 0.0, f2 = 0.0, f3 = 0.0, fit = 0.0;
    for (const auto& rec : result.records) {
        if (!rec.valid)
            continue;
        ++log.valid;
        f1 += rec.objectives.homeostasis;
        f2 += rec.objectives.distinctiveness;
        f3 += rec.objectives.sparsity;
        fit += rec.fitness;
    }
    if (log.valid > 0) {
        log.mean_f1 = f1 / log.valid;
        log.mean_f2 = f2 / log.valid;
        log.mean_f3 = f3 / log.valid;
        log.mean_fitness = fit / log.valid;
    }
}

} // namespace lenia_moqd::evolve
