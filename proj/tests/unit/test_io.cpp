#include <lenia_moqd/archive/checkpoint.hpp>
#include <lenia_moqd/io/compare.hpp>
#include <lenia_moqd/io/config_file.hpp>
#include <lenia_moqd/io/logs.hpp>
#include <lenia_moqd/io/manifest.hpp>
#include <lenia_moqd/io/plot.hpp>
#include <lenia_moqd/io/run.hpp>
#include <lenia_moqd/io/trial_io.hpp>

#include <test_support.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace lenia_moqd;
using namespace lenia_moqd::io;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json tiny_config_json()
{
    return json{{"generations", 3},
                {"batch_size", 3},
                {"capacity", 4},
                {"grid", {{"height", 32}, {"width", 32}, {"channels", 1}}},
                {"steps", 16},
                {"trace_samples", 3},
                {"encoder", {{"hidden", 16}, {"pool_size", 16}, {"pretrain_steps", 5}, {"batch_size", 4},
                             {"refresh_period", 2}}},
                {"init", {{"min_radius", 4}, {"max_radius", 8}, {"seed_size", 8}}},
                {"checkpoint_every", 2},
                {"threads", 1}};
}

fs::path write_config(const fs::path& dir, const json& j)
{
    const auto path = dir / "config.json";
    std::ofstream(path) << j.dump(2);
    return path;
}

RunManifest run(const fs::path& out, const json& config, std::vector<std::uint64_t> seeds, evolve::FitnessMode mode)
{
    fs::create_directories(out);
    std::ostringstream progress;
    return run_experiment(ExperimentRequest{load_config(write_config(out, config)), out, std::move(seeds), mode},
                          progress);
}

} // namespace

TEST(ConfigFile, MissingAndMalformed)
{
    const auto dir = support::scratch_dir("io_config");
    EXPECT_THROW(load_config(dir / "absent.json"), ConfigNotFound);
    std::ofstream(dir / "bad.json") << "{ \"generations\": ";
    EXPECT_THROW(load_config(dir / "bad.json"), evolve::ConfigError);
    std::ofstream(dir / "unknown.json") << R"({"encoder": {"laten_dim": 3}})";
    try {
        load_config(dir / "unknown.json");
        FAIL();
    } catch (const evolve::ConfigError& e) {
        EXPECT_EQ(e.key(), "encoder.laten_dim");
    }
}

TEST(ConfigFile, HashIsCanonical)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto dir = support::scratch_dir("io_hash");
    std::ofstream(dir / "a.json") << R"({"generations": 5, "grid": {"width": 64, "height": 64}})";
    std::ofstream(dir / "b.json") << "{\n  \"grid\": {\"height\": 64,\n \"width\": 64},\n  \"generations\": 5\n}\n";
    std::ofstream(dir / "c.json") << R"({"generations": 6, "grid": {"width": 64, "height": 64}})";
    const auto a = load_config(dir / "a.json");
    EXPECT_EQ(a.hash, load_config(dir / "b.json").hash);
    EXPECT_NE(a.hash, load_config(dir / "c.json").hash);
    EXPECT_EQ(a.hash.size(), 64u);
}

TEST(ConfigFile, DifferencesAreDottedPaths)
{
    const json a{{"seed", 1}, {"grid", {{"height", 64}, {"width", 64}}}, {"steps", 200}};
    const json b{{"seed", 2}, {"grid", {{"height", 32}, {"width", 64}}}, {"steps", 200}, {"extra", true}};
    EXPECT_EQ(config_differences(a, b, {"seed"}), (std::vector<std::string>{"extra", "grid.height"}));
    EXPECT_TRUE(config_differences(a, a).empty());
}

TEST(Manifest, RoundTrip)
{
    const auto dir = support::scratch_dir("io_manifest");
    RunManifest m;
    m.config_hash = "abc";
    m.code_version = code_version();
    m.mode = "homeostasis";
    m.started = utc_timestamp();
    m.trials = {TrialEntry{3, "seed_3", "complete", {}}, TrialEntry{4, "seed_4", "failed", "boom"}};
    write_manifest(dir / "manifest.json", m);
    const auto back = read_manifest(dir / "manifest.json");
    EXPECT_EQ(json(back), json(m));
    EXPECT_EQ(back.seeds(), (std::vector<std::uint64_t>{3, 4}));
    EXPECT_EQ(read_json(dir / "manifest.json").at("seeds"), json({3, 4}));
    EXPECT_EQ(m.started.size(), 20u);
}

TEST(Trial, WritesLogsCheckpointAndSummary)
{
    const auto dir = support::scratch_dir("io_trial");
    auto config = evolve::config_from_json(tiny_config_json());
    config.seed = 5;
    const auto result = run_trial(config, dir / "t");
    const TrialPaths p{dir / "t"};
    for (const auto& f : {p.config(), p.state(), p.repertoire(), p.generations_csv(), p.evaluations_csv(),
                          p.summary(), p.trajectory_svg()})
        EXPECT_TRUE(fs::exists(f)) << f;

    const auto gens = read_csv(p.generations_csv());
    EXPECT_EQ(gens.header, (std::vector<std::string>{"generation", "archive_size", "inserted", "mean_f1", "mean_f2",
                                                     "mean_f3", "mean_fitness", "encoder_loss"}));
    EXPECT_EQ(gens.rows.size(), 3u);
    EXPECT_EQ(gens.rows[1].at("encoder_loss"), "");
    EXPECT_NE(gens.rows[2].at("encoder_loss"), "");

    const auto logs = read_generation_log(p.generations_csv());
    ASSERT_EQ(logs.size(), result.logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        EXPECT_EQ(logs[i].mean_f1, result.logs[i].mean_f1);
        EXPECT_EQ(logs[i].mean_fitness, result.logs[i].mean_fitness);
        EXPECT_EQ(logs[i].encoder_loss, result.logs[i].encoder_loss);
    }

    const auto evals = read_csv(p.evaluations_csv());
    EXPECT_EQ(evals.header, (std::vector<std::string>{"generation", "index", "id", "valid", "f1", "f2", "f3",
                                                      "fitness", "inserted"}));
    EXPECT_EQ(evals.rows.size(), 9u);
    EXPECT_EQ(evals.rows[4].at("id"), "g1-1");

    const auto ckpt = load_checkpoint(p.repertoire());
    EXPECT_EQ(ckpt.generation, 3);
    EXPECT_EQ(ckpt.config.seed, 5u);
    EXPECT_EQ(ckpt.repertoire.size(), result.summary.members);
    EXPECT_EQ(read_json(p.summary()).get<metrics::TrialSummary>().repertoire_variance,
              result.summary.repertoire_variance);
    EXPECT_EQ(support::read_file(p.trajectory_svg()).rfind("<svg", 0), 0u);
}

TEST(Trial, CheckpointRoundTripIsByteStable)
{
    const auto dir = support::scratch_dir("io_ckpt");
    auto config = evolve::config_from_json(tiny_config_json());
    run_trial(config, dir / "t");
    const auto ckpt = load_checkpoint(dir / "t");
    archive::save_repertoire((dir / "again.jsonl").string(), ckpt.repertoire);
    EXPECT_EQ(support::read_file(dir / "t" / "repertoire.jsonl"), support::read_file(dir / "again.jsonl"));
}

TEST(Experiment, ManifestTracksSeedsAndFailures)
{
    const auto dir = support::scratch_dir("io_experiment");
    const auto m = run(dir / "ok", tiny_config_json(), {1, 2}, evolve::FitnessMode::homeostasis);
    EXPECT_EQ(m.status, "complete");
    EXPECT_EQ(m.mode, "homeostasis");
    EXPECT_EQ(m.seeds(), (std::vector<std::uint64_t>{1, 2}));
    EXPECT_FALSE(m.finished.empty());
    EXPECT_EQ(read_manifest(dir / "ok" / "manifest.json").trials.size(), 2u);
    EXPECT_EQ(load_checkpoint(dir / "ok" / "seed_2").config.fitness_mode, evolve::FitnessMode::homeostasis);

    // A plain file where a trial directory should go makes that trial fail.
    fs::create_directories(dir / "partial");
    std::ofstream(dir / "partial" / "seed_2") << "occupied";
    const auto p = run(dir / "partial", tiny_config_json(), {1, 2}, evolve::FitnessMode::multi_objective);
    EXPECT_EQ(p.status, "partial");
    EXPECT_EQ(p.trials[0].status, "complete");
    EXPECT_EQ(p.trials[1].status, "failed");
    EXPECT_FALSE(p.trials[1].error.empty());
}

TEST(Compare, ReportsAndRefusesMismatches)
{
    const auto dir = support::scratch_dir("io_compare");
    run(dir / "h", tiny_config_json(), {1, 2}, evolve::FitnessMode::homeostasis);
    run(dir / "m", tiny_config_json(), {1, 2}, evolve::FitnessMode::multi_objective);

    const std::vector<fs::path> h{dir / "h"};
    const std::vector<fs::path> m{dir / "m"};
    const auto report = compare_runs(h, m, 1);
    EXPECT_EQ(report.homeostasis.size(), 2u);
    EXPECT_EQ(report.seed_pairs, 2);
    write_report(dir / "report", report);
    const auto table = read_csv(dir / "report" / "table.csv");
    EXPECT_EQ(table.header, (std::vector<std::string>{"Metric", "Homeostasis", "Multi-Objective", "Delta", "t", "p"}));
    EXPECT_EQ(table.rows.size(), 3u);
    const auto doc = read_json(dir / "report" / "report.json");
    EXPECT_TRUE(doc.contains("limitation"));
    EXPECT_EQ(doc.at("rows").size(), 3u);
    EXPECT_TRUE(fs::exists(dir / "report" / "delta.svg"));
    EXPECT_TRUE(fs::exists(dir / "report" / "trials.csv"));

    const auto same = compare_runs(h, h, 1);
    for (const auto& row : same.rows) {
        EXPECT_EQ(*row.delta_percent, 0.0);
        EXPECT_EQ(row.test.p, 1.0);
    }

    auto other = tiny_config_json();
    other["grid"]["height"] = 64;
    other["steps"] = 17;
    run(dir / "o", other, {1, 2}, evolve::FitnessMode::multi_objective);
    const std::vector<fs::path> o{dir / "o"};
    try {
        compare_runs(h, o, 1);
        FAIL();
    } catch (const ConfigMismatch& e) {
        EXPECT_EQ(e.keys(), (std::vector<std::string>{"grid.height", "steps"}));
    }

    const std::vector<fs::path> single{dir / "h" / "seed_1"};
    EXPECT_THROW(compare_runs(single, m, 1), std::invalid_argument);
}

TEST(Plot, DeltaChartListsMetrics)
{
    const auto dir = support::scratch_dir("io_plot");
    std::vector<metrics::ComparisonRow> rows(2);
    rows[0].metric = "Mass";
    rows[0].delta_percent = 0.7;
    rows[1].metric = "Complexity";
    rows[1].delta_percent = -1.1;
    write_delta_svg(dir / "d.svg", rows);
    const auto svg = support::read_file(dir / "d.svg");
    EXPECT_NE(svg.find(">Mass<"), std::string::npos);
    EXPECT_NE(svg.find(">Complexity<"), std::string::npos);
}
