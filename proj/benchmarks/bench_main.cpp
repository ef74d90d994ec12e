#include <lenia_moqd/descriptor/pooling.hpp>
#include <lenia_moqd/descriptor/vae.hpp>
#include <lenia_moqd/fitness/objectives.hpp>
#include <lenia_moqd/lenia/simulator.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace lenia_moqd;

static void BM_SimulatorStep(benchmark::State& state)
{
    const auto side = static_cast<int>(state.range(0));
    lenia::Simulator sim(lenia::orbium(), {side, side, 1});
    auto grid = sim.initial_state();
    for (auto _ : state) {
        sim.advance(grid);
        benchmark::DoNotOptimize(grid.data());
    }
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_SimulatorStep)->Arg(64)->Arg(128)->Arg(256);

static void BM_Rollout200(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(lenia::simulate(lenia::orbium(), {64, 64, 1}, 200));
}
BENCHMARK(BM_Rollout200)->Unit(benchmark::kMillisecond);

static Eigen::MatrixXf random_batch(Eigen::Index rows, Eigen::Index cols)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    Eigen::MatrixXf m(rows, cols);
    for (auto& v : m.reshaped())
        v = u(rng);
    return m;
}

static void BM_VaeEncode(benchmark::State& state)
{
    const descriptor::Vae vae(descriptor::VaeShape{1024, 256, 8}, 1);
    const Eigen::VectorXf x = random_batch(1024, 1).col(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(vae.encode(x));
}
BENCHMARK(BM_VaeEncode);

static void BM_VaeTrainStep(benchmark::State& state)
{
    descriptor::Vae vae(descriptor::VaeShape{1024, 256, 8}, 1);
    const auto batch = random_batch(1024, 32);
    std::mt19937_64 rng(9);
    for (auto _ : state)
        benchmark::DoNotOptimize(vae.train_step(batch, 1e-3f, 0.1f, rng));
}
BENCHMARK(BM_VaeTrainStep)->Unit(benchmark::kMillisecond);

static std::vector<fitness::ObjectiveVector> random_objectives(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<fitness::ObjectiveVector> out(n);
    for (auto& o : out)
        o = {g(rng), g(rng), g(rng)};
    return out;
}

static void BM_DominationBatch(benchmark::State& state)
{
    const auto candidates = random_objectives(static_cast<std::size_t>(state.range(0)), 1);
    const auto archive = random_objectives(static_cast<std::size_t>(state.range(1)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(fitness::domination_fitness_batch(candidates, archive));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_DominationBatch)->Args({16, 128})->Args({256, 1024});

static void BM_DominationScalar(benchmark::State& state)
{
    const auto candidates = random_objectives(static_cast<std::size_t>(state.range(0)), 1);
    const auto archive = random_objectives(static_cast<std::size_t>(state.range(1)), 2);
    for (auto _ : state)
        for (const auto& c : candidates)
            benchmark::DoNotOptimize(fitness::domination_fitness(c, archive));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_DominationScalar)->Args({256, 1024});
BENCHMARK_MAIN();
