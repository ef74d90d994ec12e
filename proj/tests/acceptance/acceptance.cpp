// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <lenia_moqd/archive/checkpoint.hpp>
#include <lenia_moqd/descriptor/pooling.hpp>
#include <lenia_moqd/descriptor/vae.hpp>
#include <lenia_moqd/evolve/mutation.hpp>
#include <lenia_moqd/fitness/objectives.hpp>
#include <lenia_moqd/io/config_file.hpp>
#include <lenia_moqd/io/logs.hpp>
#include <lenia_moqd/io/manifest.hpp>
#include <lenia_moqd/io/trial_io.hpp>
#include <lenia_moqd/lenia/fft.hpp>
#include <lenia_moqd/lenia/kernel.hpp>
#include <lenia_moqd/lenia/simulator.hpp>
#include <lenia_moqd_cli/app.hpp>

#include <test_support.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace lenia_moqd;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Orbium mass every 10 steps from tests/oracle/lenia_reference.py.
constexpr double kOrbiumReferenceMass[] = {
    0.018334960937500002, 0.017960150727183533, 0.017500313894627428, 0.017881783221896153,
    0.017820014491020549, 0.017778385223042203, 0.017825057582967006, 0.017875472820265373,
    0.017771622453879032, 0.017838162081971302, 0.017850362738341823, 0.017812378832194428,
    0.017807852502819074, 0.017821065766887842, 0.017773284146016709, 0.017774028762220381,
    0.017863722940130174, 0.017883237116365039, 0.017826598912495328, 0.017865230172665621,
    0.017834502558175182,
};

Verdict convolution_equivalence()
{
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    const evolve::InitRanges ranges;
    const lenia::GridShape shape{64, 64, 1};
    lenia::RealFft2d fft(64, 64);
    double worst = 0.0;
    for (int pair = 0; pair < 10; ++pair) {
        const auto genome = evolve::random_genome(ranges, shape, rng);
        const auto kernel = lenia::build_kernel(genome.kernels.front(), genome.base_radius, fft);
        const auto grid = support::random_state(shape, rng);
        std::vector<std::complex<double>> spectrum(fft.spectrum_size());
        fft.forward(grid.data(), spectrum);
        for (std::size_t i = 0; i < spectrum.size(); ++i)
            spectrum[i] *= kernel.spectrum[i];
        std::vector<double> fast(shape.cells());
        fft.inverse(spectrum, fast);
        const auto direct = support::direct_convolve(grid.data(), kernel.spatial, 64, 64);
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
            diff = std::max(diff, std::abs(fast[i] - direct[i]));
            scale = std::max(scale, std::abs(direct[i]));
        }
        worst = std::max(worst, diff / scale);
    }
    const double elapsed = seconds_since(start);
    return {worst < 1e-6 && elapsed < 10.0,
            fmt("10 random 64x64 pairs, max relative error %.2e (< 1e-6), %.2f s (< 10 s)", worst, elapsed)};
}

Verdict fitness_suite()
{
    using fitness::ObjectiveVector;
    std::vector<std::string> failures;
    const std::vector<Eigen::VectorXd> constant(6, Eigen::Vector3d(0.2, -0.7, 1.5));
    if (fitness::homeostasis(constant) != 0.0)
        failures.push_back("f1 of constant trace");
    const double sigma = 0.8;
    const std::vector<Eigen::VectorXd> one{Eigen::Vector2d(sigma * std::sqrt(2.0), 0.0)};
    if (std::abs(fitness::sparsity(Eigen::Vector2d::Zero(), one, sigma) + std::exp(-1.0)) > 1e-12)
        failures.push_back("f3 at distance sigma*sqrt(2)");
    if (fitness::domination_fitness(ObjectiveVector{-0.3, 0.4, -2.0}, std::vector<ObjectiveVector>{}) != 0.0)
        failures.push_back("empty-archive fitness");
    if (fitness::distinctiveness(Eigen::Vector2d(3.0, 4.0), Eigen::Vector2d::Zero()) != 5.0)
        failures.push_back("f2 3-4-5");
    std::mt19937_64 rng(2002);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const bool coarse = i % 2 == 0;
        const auto a = support::random_objectives(rng, coarse);
        const auto b = support::random_objectives(rng, coarse);
        const auto c = support::random_objectives(rng, coarse);
        if (fitness::dominates(a, a) || (fitness::dominates(a, b) && fitness::dominates(b, a))
            || (fitness::dominates(a, b) && fitness::dominates(b, c) && !fitness::dominates(a, c)))
            ++violations;
    }
    if (violations)
        failures.push_back(std::to_string(violations) + " partial-order violations");
    std::string detail = "f1 constant = 0, f3 = -exp(-1), empty archive = 0, 10^4 triples irreflexive/antisymmetric/transitive";
    if (!failures.empty()) {
        detail = "failed:";
        for (const auto& f : failures)
            detail += " " + f + ";";
    }
    return {failures.empty(), detail};
}

Verdict domination_oracle()
{
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<int> size(1, 1024);
    std::size_t compared = 0, mismatches = 0, largest = 0;
    for (int pop = 0; pop < 100; ++pop) {
        const bool coarse = pop % 2 == 0;
        const std::size_t n = pop < 2 ? 1024 : static_cast<std::size_t>(size(rng));
        largest = std::max(largest, n);
        std::vector<fitness::ObjectiveVector> archive(n), candidates(64);
        for (auto& o : archive)
            o = support::random_objectives(rng, coarse);
        for (auto& o : candidates)
            o = support::random_objectives(rng, coarse);
        const auto fast = fitness::domination_fitness_batch(candidates, archive);
        for (std::size_t i = 0; i < candidates.size(); ++i, ++compared)
            if (fast[i] != support::naive_domination_fitness(candidates[i], archive))
                ++mismatches;
    }
    return {mismatches == 0,
            fmt("100 populations (largest %zu), %zu candidates, %zu mismatches vs double-loop oracle", largest, compared,
                mismatches)};
}

Verdict vae_checks()
{
    using VaeD = descriptor::BasicVae<double>;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const descriptor::VaeShape shape{9, 6, 3};
        auto params = descriptor::BasicVaeParams<double>::random(shape, seed);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n(0.0, 1.0);
        params.for_each_tensor([&](const char*, auto& t) {
            for (auto& v : t.reshaped())
                v += 0.1 * n(rng);
        });
        Eigen::MatrixXd batch(9, 5), noise(3, 5);
        for (auto& v : batch.reshaped())
            v = 0.5 + 0.3 * n(rng);
        for (auto& v : noise.reshaped())
            v = n(rng);
        descriptor::BasicVaeParams<double> grad;
        VaeD(params).loss_and_gradient(batch, noise, 0.5, &grad);
        const auto analytic = grad.flatten();
        const auto flat = params.flatten();
        for (Eigen::Index i = 0; i < flat.size(); ++i) {
            auto probe = params;
            auto shifted = flat;
            shifted[i] += 1e-3;
            probe.unflatten(shifted);
            const double up = VaeD(probe).loss_and_gradient(batch, noise, 0.5, nullptr).total;
            shifted[i] -= 2e-3;
            probe.unflatten(shifted);
            const double down = VaeD(probe).loss_and_gradient(batch, noise, 0.5, nullptr).total;
            const double numeric = (up - down) / 2e-3;
            worst = std::max(worst, std::abs(numeric - analytic[i])
                                        / std::max(1e-6, std::abs(numeric) + std::abs(analytic[i])));
        }
    }

    std::vector<Eigen::VectorXf> frames;
    lenia::simulate_each(lenia::orbium(), {64, 64, 1}, 155, [&](int t, const lenia::GridState& s) {
        if (t % 5 == 0 && frames.size() < 32)
            frames.push_back(descriptor::pool_frame(s, 32));
    });
    Eigen::MatrixXf batch(1024, 32);
    for (int i = 0; i < 32; ++i)
        batch.col(i) = frames[static_cast<std::size_t>(i)];
    descriptor::Vae vae(descriptor::VaeShape{1024, 256, 8}, 42);
    const Eigen::MatrixXf zero = Eigen::MatrixXf::Zero(8, 32);
    const double before = vae.loss_and_gradient(batch, zero, 0.1f, nullptr).total;
    std::mt19937_64 rng(7);
    for (int s = 0; s < 200; ++s)
        vae.train_step(batch, 1e-3f, 0.1f, rng);
    const double after = vae.loss_and_gradient(batch, zero, 0.1f, nullptr).total;
    const double drop = 1.0 - after / before;
    return {worst < 1e-4 && drop >= 0.5,
            fmt("max gradient relative error %.2e (< 1e-4); loss %.4g -> %.4g, drop %.1f%% (>= 50%%) in 200 steps",
                worst, before, after, 100.0 * drop)};
}

Verdict orbium_reference()
{
    const auto rollout = lenia::simulate(lenia::orbium(), {64, 64, 1}, 200);
    double worst = 0.0;
    for (int t = 0; t <= 200; t += 10) {
        const double ref = kOrbiumReferenceMass[t / 10];
        worst = std::max(worst, std::abs(lenia::mass(rollout.frames[static_cast<std::size_t>(t)]) - ref) / ref);
    }
    const double final_mass = lenia::mass(rollout.frames.back());
    return {worst <= 0.10 && final_mass > 0.0,
            fmt("200 steps, final mass %.5f, max deviation from oracle %.2f%% (<= 10%%)", final_mass, 100.0 * worst)};
}

struct DeskRuns {
    fs::path homeostasis;
    fs::path multi_objective;
    fs::path rerun;
    fs::path report;
    evolve::EvolutionConfig config;
    std::vector<double> trial_seconds;
    std::string error;
};

bool reusable(const fs::path& dir, const std::string& hash, std::size_t trials)
{
    if (!fs::exists(dir / "manifest.json"))
        return false;
    const auto m = io::read_manifest(dir / "manifest.json");
    return m.status == "complete" && m.config_hash == hash && m.trials.size() == trials;
}

int evolve_into(const fs::path& out, const std::string& config, const std::string& seeds, const char* mode,
                std::ostream& log)
{
    std::ostringstream err;
    fs::remove_all(out);
    const int code = cli::run_cli({"evolve", "--config", config, "--out", out.string(), "--seeds", seeds, "--mode", mode},
                                  log, err);
    if (code != 0)
        log << err.str();
    return code;
}

DeskRuns desk_runs(const fs::path& work, const std::string& config, int seeds, bool reuse, std::ostream& log)
{
    const auto loaded = io::load_config(config);
    const auto& hash = loaded.hash;
    DeskRuns runs{work / "homeostasis", work / "multi_objective", work / "rerun", work / "report", loaded.config, {}, {}};
    std::string seed_list;
    for (int s = 1; s <= seeds; ++s)
        seed_list += (s > 1 ? "," : "") + std::to_string(s);

    struct Job {
        fs::path out;
        std::string seeds;
        const char* mode;
        std::size_t trials;
    };
    const Job jobs[] = {{runs.multi_objective, seed_list, "multi_objective", static_cast<std::size_t>(seeds)},
                        {runs.homeostasis, seed_list, "homeostasis", static_cast<std::size_t>(seeds)},
                        {runs.rerun, "1", "multi_objective", 1}};
    for (const auto& job : jobs) {
        if (reuse && reusable(job.out, hash, job.trials))
            continue;
        const auto start = Clock::now();
        if (evolve_into(job.out, config, job.seeds, job.mode, log) != 0) {
            runs.error = "evolve failed for " + job.out.string();
            return runs;
        }
        runs.trial_seconds.push_back(seconds_since(start) / static_cast<double>(job.trials));
    }
    std::ostringstream err;
    if (cli::run_cli({"compare", "--a", runs.homeostasis.string(), "--b", runs.multi_objective.string(), "--out",
                      runs.report.string()},
                     log, err)
        != 0)
        runs.error = "compare failed: " + err.str();
    return runs;
}

Verdict determinism(const DeskRuns& runs)
{
    const auto a = runs.multi_objective / "seed_1";
    const auto b = runs.rerun / "seed_1";
    const auto gens_a = support::read_file(a / "generations.csv");
    const auto gens_b = support::read_file(b / "generations.csv");
    const bool evals = support::read_file(a / "evaluations.csv") == support::read_file(b / "evaluations.csv");
    const bool archive = support::read_file(a / "repertoire.jsonl") == support::read_file(b / "repertoire.jsonl");
    const auto rows = io::read_csv(a / "generations.csv").rows.size();
    double slowest = 0.0;
    for (double s : runs.trial_seconds)
        slowest = std::max(slowest, s);
    const bool pass = !gens_a.empty() && gens_a == gens_b && evals && archive && rows == static_cast<std::size_t>(runs.config.generations) && slowest < 1800.0;
    return {pass, fmt("seed 1 run twice: generation logs %s (%zu generations), evaluation logs %s, archives %s; "
                      "slowest trial %.0f s (< 1800 s)",
                      gens_a == gens_b ? "identical" : "DIFFER", rows, evals ? "identical" : "DIFFER",
                      archive ? "identical" : "DIFFER", slowest)};
}

Verdict directional_replication(const DeskRuns& runs, int seeds)
{
    const auto report = io::read_json(runs.report / "report.json");
    const auto table = io::read_csv(runs.report / "table.csv");
    const std::vector<std::string> columns{"Metric", "Homeostasis", "Multi-Objective", "Delta", "t", "p"};
    bool shape = table.header == columns && table.rows.size() == 3;
    std::string summary;
    for (const auto& row : table.rows) {
        shape = shape && !row.at("t").empty() && !row.at("p").empty();
        summary += fmt(" %s delta %+.2f%% (t=%.3f, p=%.3f);", row.at("Metric").c_str(), std::stod(row.at("Delta")),
                       std::stod(row.at("t")), std::stod(row.at("p")));
    }
    const bool limitation = report.contains("limitation") && !report.at("limitation").get<std::string>().empty();
    const int pairs = report.at("variance_direction").at("seed_pairs").get<int>();
    const int wins = report.at("variance_direction").at("multi_objective_not_lower").get<int>();
    const bool direction = pairs >= seeds && wins >= 3;
    return {shape && limitation && direction,
            fmt("multi-objective variance >= homeostasis in %d of %d seed pairs (need >= 3); table columns %s; "
                "limitation note %s;",
                wins, pairs, shape ? "present" : "MISSING", limitation ? "present" : "MISSING")
                + summary};
}

Verdict mode_separation(const DeskRuns& runs)
{
    std::size_t checked = 0, mismatches = 0;
    for (const auto& trial : io::read_manifest(runs.homeostasis / "manifest.json").trials) {
        for (const auto& row : io::read_csv(runs.homeostasis / trial.checkpoint / "evaluations.csv").rows) {
            if (row.at("valid") != "1")
                continue;
            ++checked;
            if (std::stod(row.at("fitness")) != std::stod(row.at("f1")) || row.at("fitness") != row.at("f1"))
                ++mismatches;
        }
    }
    return {checked > 0 && mismatches == 0,
            fmt("%zu logged homeostasis evaluations, %zu with fitness != f1", checked, mismatches)};
}

Verdict checkpoint_round_trip(const DeskRuns& runs)
{
    const auto dir = runs.multi_objective / "seed_1";
    const auto original = io::load_checkpoint(dir);
    const auto copy = dir.parent_path() / "roundtrip.jsonl";
    archive::save_repertoire(copy.string(), original.repertoire);
    const auto again = archive::load_repertoire(copy.string(), original.repertoire.capacity(),
                                                original.repertoire.latent_dim());
    std::size_t differing = 0;
    for (std::size_t i = 0; i < original.repertoire.size(); ++i) {
        const auto& a = original.repertoire.members()[i];
        const auto& b = again.members()[i];
        if (a.id != b.id || !(a.genome == b.genome) || a.descriptor != b.descriptor || a.trace.encodings != b.trace.encodings
            || a.trace.frame_indices != b.trace.frame_indices || !(a.objectives == b.objectives)
            || a.fitness != b.fitness || a.birth_generation != b.birth_generation)
            ++differing;
    }
    const bool bytes = support::read_file(dir / "repertoire.jsonl") == support::read_file(copy);
    fs::remove(copy);
    const auto n = original.repertoire.size();
    return {n == static_cast<std::size_t>(runs.config.capacity) && again.size() == n && differing == 0 && bytes,
            fmt("%zu-member archive reloaded: %zu members differ, re-saved file %s", n, differing,
                bytes ? "byte-identical" : "DIFFERS")};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    fs::path work = fs::temp_directory_path() / "lenia_moqd_acceptance";
    std::string config = std::string(LENIA_MOQD_SOURCE_DIR) + "/configs/desk.json";
    int seeds = 5;
    bool reuse = false;
    std::set<int> only;
    app.add_option("--work", work, "Directory for desk-scale runs");
    app.add_option("--config", config, "Desk-scale config");
    app.add_option("--seeds", seeds, "Seed pairs for the directional check")->check(CLI::Range(5, 100));
    app.add_flag("--reuse", reuse, "Reuse complete runs with a matching config hash");
    app.add_option("--only", only, "Run only these criteria")->delimiter(',')->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    fs::create_directories(work);
    std::ofstream log(work / "runs.log", std::ios::app);

    const auto selected = [&](int n) { return only.empty() || only.contains(n); };
    const auto needs_runs = [&] {
        for (int n = 6; n <= 9; ++n)
            if (selected(n))
                return true;
        return false;
    };

    std::optional<DeskRuns> runs;
    if (needs_runs())
        runs = desk_runs(work, config, seeds, reuse, log);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"convolution equivalence", convolution_equivalence},
        {"fitness unit suite", fitness_suite},
        {"domination oracle", domination_oracle},
        {"VAE gradient check and training sanity", vae_checks},
        {"Lenia reference behavior", orbium_reference},
        {"determinism", [&] { return determinism(*runs); }},
        {"desk-scale directional replication", [&] { return directional_replication(*runs, seeds); }},
        {"mode separation", [&] { return mode_separation(*runs); }},
        {"checkpoint round-trip", [&] { return checkpoint_round_trip(*runs); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (!selected(n))
            continue;
        Verdict v;
        if (n >= 6 && !runs->error.empty()) {
            v = {false, runs->error};
        } else {
            try {
                v = criteria[i].second();
            } catch (const std::exception& e) {
                v = {false, std::string("exception: ") + e.what()};
            }
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << " [" << n << "] " << criteria[i].first << ": " << v.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
