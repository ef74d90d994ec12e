#include <lenia_moqd/evolve/config.hpp>
#include <lenia_moqd/evolve/engine.hpp>
#include <lenia_moqd/evolve/mutation.hpp>

#include <test_support.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>

using namespace lenia_moqd;
using namespace lenia_moqd::evolve;
using nlohmann::json;

namespace {

EvolutionConfig small_config(FitnessMode mode = FitnessMode::multi_objective)
{
    EvolutionConfig c;
    c.generations = 7;
    c.batch_size = 4;
    c.capacity = 8;
    c.fitness_mode = mode;
    c.grid = {32, 32, 1};
    c.steps = 24;
    c.trace_samples = 4;
    c.encoder.hidden = 32;
    c.encoder.pool_size = 16;
    c.encoder.pretrain_steps = 20;
    c.encoder.batch_size = 4;
    c.encoder.refresh_period = 3;
    c.init.min_radius = 4;
    c.init.max_radius = 8;
    c.init.seed_size = 8;
    c.seed = 11;
    c.threads = 1;
    return c;
}

std::vector<GenerationResult> run_all(const EvolutionConfig& c)
{
    Engine engine(c);
    std::vector<GenerationResult> out;
    while (!engine.finished())
        out.push_back(engine.run_generation());
    return out;
}

ConfigError config_error(const json& j)
{
    try {
        config_from_json(j);
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "no ConfigError for " << j.dump();
    return ConfigError("", "");
}

} // namespace

TEST(Config, DefaultsAreDeskScale)
{
    const auto c = desk_config();
    EXPECT_EQ(c.generations, 300);
    EXPECT_EQ(c.batch_size, 16);
    EXPECT_EQ(c.capacity, 128);
    EXPECT_EQ(c.grid, (lenia::GridShape{64, 64, 1}));
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(json(config_from_json(json::object())), json(c));
}

TEST(Config, JsonRoundTrip)
{
    const auto c = small_config(FitnessMode::homeostasis);
    const json j = c;
    EXPECT_EQ(json(config_from_json(j)), j);
}

TEST(Config, UnknownKeysNameTheirPath)
{
    EXPECT_EQ(config_error({{"generatoins", 3}}).key(), "generatoins");
    EXPECT_EQ(config_error({{"encoder", {{"latent", 4}}}}).key(), "encoder.latent");
    EXPECT_EQ(config_error({{"grid", {{"height", 64}, {"depth", 2}}}}).key(), "grid.depth");
}

TEST(Config, TypeAndRangeErrorsNameTheirKey)
{
    EXPECT_EQ(config_error({{"generations", "many"}}).key(), "generations");
    EXPECT_EQ(config_error({{"generations", 2.5}}).key(), "generations");
    EXPECT_EQ(config_error({{"capacity", 0}}).key(), "capacity");
    EXPECT_EQ(config_error({{"fitness_mode", "pareto"}}).key(), "fitness_mode");
    EXPECT_EQ(config_error({{"sigma", -1.0}}).key(), "sigma");
    EXPECT_EQ(config_error({{"init", {{"ring_width", {0.3}}}}}).key(), "init.ring_width");
    EXPECT_EQ(config_error({{"encoder", 3}}).key(), "encoder");
}

TEST(Mutation, PerturbationScaleMatchesConfig)
{
    const auto parent = lenia::orbium();
    MutationScales scales;
    std::mt19937_64 rng(21);
    std::vector<double> deltas;
    for (int i = 0; i < 4000; ++i) {
        const auto child = mutate(parent, scales, {64, 64, 1}, rng);
        deltas.push_back(child.kernels.front().growth_mu - parent.kernels.front().growth_mu);
    }
    double mean = 0.0;
    for (double d : deltas)
        mean += d / deltas.size();
    double var = 0.0;
    for (double d : deltas)
        var += (d - mean) * (d - mean) / (deltas.size() - 1);
    EXPECT_NEAR(mean, 0.0, 0.001);
    EXPECT_GE(std::sqrt(var), 0.008);
    EXPECT_LE(std::sqrt(var), 0.012);
}

TEST(Mutation, ZeroScalesLeaveGenomeUnchanged)
{
    const auto parent = lenia::orbium();
    MutationScales zero{0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    std::mt19937_64 rng(1);
    EXPECT_EQ(mutate(parent, zero, {64, 64, 1}, rng), parent);
}

TEST(Mutation, ChildrenStayValid)
{
    MutationScales wild;
    wild.radius_fraction = 0.5;
    wild.ring_height = 0.8;
    wild.ring_width = 0.3;
    wild.growth_sigma = 0.5;
    wild.dt = 0.5;
    wild.base_radius = 5.0;
    wild.seed_pattern = 0.5;
    const lenia::GridShape shape{32, 32, 1};
    const auto c = small_config();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        auto g = random_genome(c.init, shape, rng);
        for (int k = 0; k < 5; ++k) {
            g = mutate(g, wild, shape, rng);
            ASSERT_NO_THROW(lenia::validate(g, shape));
        }
    }
}

TEST(Mutation, RandomGenomesRespectRangesAndGrid)
{
    const InitRanges ranges;
    std::mt19937_64 rng(4);
    for (const lenia::GridShape shape : {lenia::GridShape{64, 64, 1}, lenia::GridShape{32, 32, 2}}) {
        for (int i = 0; i < 300; ++i) {
            const auto g = random_genome(ranges, shape, rng);
            ASSERT_NO_THROW(lenia::validate(g, shape));
            ASSERT_GE(g.kernels.size(), 1u);
            ASSERT_LE(g.kernels.size(), 3u);
            for (const auto& k : g.kernels) {
                ASSERT_GE(k.growth_mu, 0.1);
                ASSERT_LE(k.growth_mu, 0.35);
            }
        }
    }
}

TEST(Mutation, StreamsAreReproducibleAndDistinct)
{
    auto a = make_rng(1, 2, 3, 4);
    auto b = make_rng(1, 2, 3, 4);
    auto c = make_rng(1, 2, 4, 3);
    auto d = make_rng(2, 2, 3, 4);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
}

TEST(Engine, SameSeedGivesIdenticalRuns)
{
    const auto a = run_all(small_config());
    const auto b = run_all(small_config());
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t g = 0; g < a.size(); ++g) {
        EXPECT_EQ(a[g].log.mean_f1, b[g].log.mean_f1);
        EXPECT_EQ(a[g].log.mean_fitness, b[g].log.mean_fitness);
        EXPECT_EQ(a[g].log.encoder_loss, b[g].log.encoder_loss);
        for (std::size_t i = 0; i < a[g].records.size(); ++i) {
            EXPECT_EQ(a[g].records[i].objectives, b[g].records[i].objectives);
            EXPECT_EQ(a[g].records[i].inserted, b[g].records[i].inserted);
        }
    }
}

TEST(Engine, ThreadCountDoesNotChangeResults)
{
    auto one = small_config();
    auto many = small_config();
    many.threads = 3;
    const auto a = run_all(one);
    const auto b = run_all(many);
    for (std::size_t g = 0; g < a.size(); ++g)
        for (std::size_t i = 0; i < a[g].records.size(); ++i) {
            EXPECT_EQ(a[g].records[i].objectives, b[g].records[i].objectives);
            EXPECT_EQ(a[g].records[i].fitness, b[g].records[i].fitness);
        }
}

TEST(Engine, DifferentSeedsDiverge)
{
    auto other = small_config();
    other.seed = 12;
    EXPECT_NE(run_all(small_config()).back().log.mean_f1, run_all(other).back().log.mean_f1);
}

TEST(Engine, BatchIsScoredAgainstFrozenSnapshot)
{
    const auto c = small_config();
    Engine engine(c);
    engine.run_generation();
    engine.run_generation();
    const auto gen = engine.run_generation();
    ASSERT_FALSE(gen.snapshot.empty());
    for (const auto& ind : gen.individuals) {
        if (!ind)
            continue;
        EXPECT_EQ(ind->fitness, fitness::domination_fitness(ind->objectives, gen.snapshot.objectives));
        EXPECT_EQ(ind->objectives.sparsity, fitness::sparsity(ind->descriptor, gen.snapshot.descriptors, gen.sigma));
        EXPECT_EQ(ind->objectives.distinctiveness, fitness::distinctiveness(ind->trace_mean(), gen.snapshot.mean));
        EXPECT_EQ(ind->objectives.homeostasis, fitness::homeostasis(ind->trace));
    }
}

TEST(Engine, HomeostasisFitnessIsF1)
{
    for (const auto& gen : run_all(small_config(FitnessMode::homeostasis)))
        for (const auto& r : gen.records)
            if (r.valid)
                EXPECT_EQ(r.fitness, r.objectives.homeostasis);
}

TEST(Engine, FillsArchiveAndNamesIndividuals)
{
    const auto gens = run_all(small_config());
    EXPECT_EQ(gens.front().records.front().id, "g0-0");
    EXPECT_EQ(gens.back().records.back().id, "g6-3");
    EXPECT_EQ(gens.back().log.archive_size, 8u);
    int inserted = 0;
    for (const auto& g : gens)
        inserted += g.log.inserted;
    EXPECT_GE(inserted, 8);
}

TEST(Engine, EncoderTrainsOnBootstrapAndRefreshGenerations)
{
    const auto gens = run_all(small_config());
    for (const auto& g : gens) {
        const bool trains = g.log.generation == 0 || g.log.generation % 3 == 0;
        EXPECT_EQ(g.log.encoder_loss.has_value(), trains) << "generation " << g.log.generation;
    }
}

TEST(Engine, RefreshReevaluatesArchive)
{
    auto c = small_config();
    c.generations = 4;
    Engine engine(c);
    while (!engine.finished())
        engine.run_generation();
    const auto members = engine.repertoire().members();
    std::vector<fitness::ObjectiveVector> objectives;
    for (const auto& m : members)
        objectives.push_back(m.objectives);
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::vector<Eigen::VectorXd> others;
        for (std::size_t j = 0; j < members.size(); ++j)
            if (j != i)
                others.push_back(members[j].descriptor);
        EXPECT_EQ(members[i].fitness, fitness::domination_fitness(members[i].objectives, objectives));
        EXPECT_DOUBLE_EQ(members[i].objectives.sparsity, fitness::sparsity(members[i].descriptor, others, c.sigma));
        EXPECT_EQ(members[i].descriptor, members[i].trace.encodings.back());
    }
}

TEST(Engine, ResolveThreads)
{
    EXPECT_EQ(resolve_threads(3), 3);
    ::setenv("LENIA_MOQD_THREADS", "2", 1);
    EXPECT_EQ(resolve_threads(0), 2);
    ::unsetenv("LENIA_MOQD_THREADS");
    EXPECT_GE(resolve_threads(0), 1);
}

TEST(Engine, RunningPastTheEndThrows)
{
    auto c = small_config();
    c.generations = 1;
    Engine engine(c);
    engine.run_generation();
    EXPECT_TRUE(engine.finished());
    EXPECT_THROW(engine.run_generation(), std::logic_error);
}
