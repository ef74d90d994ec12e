#include <lenia_moqd/io/compare.hpp>

#include <lenia_moqd/io/config_file.hpp>
#include <lenia_moqd/io/logs.hpp>
#include <lenia_moqd/io/manifest.hpp>
#include <lenia_moqd/io/plot.hpp>
#include <lenia_moqd/io/trial_io.hpp>

#include <fstream>
#include <map>

namespace lenia_moqd::io {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& keys)
{
    std::string out;
    for (const auto& k : keys)
        out += (out.empty() ? "" : ", ") + k;
    return out;
}

constexpr const char* kLimitation
    = "Desk-scale comparison: only the direction of each difference is meaningful. Absolute magnitudes and "
      "significance levels from long, many-trial runs are not reproduced at this scale.";

} // namespace

ConfigMismatch::ConfigMismatch(std::string first, std::string other, std::vector<std::string> keys)
    : std::runtime_error("config of " + other + " differs from " + first + " in: " + join(keys)),
      keys_(std::move(keys))
{
}

const std::set<std::string>& comparison_ignored_keys()
{
    static const std::set<std::string> keys{"seed", "fitness_mode", "threads", "checkpoint_every"};
    return keys;
}

std::vector<fs::path> expand_trials(std::span<const fs::path> inputs)
{
    std::vector<fs::path> out;
    for (const auto& in : inputs) {
        if (fs::exists(in / "manifest.json")) {
            const auto manifest = read_manifest(in / "manifest.json");
            for (const auto& t : manifest.trials)
                if (t.status == "complete")
                    out.push_back(in / t.checkpoint);
        } else if (fs::exists(TrialPaths{trial_dir_of(in)}.repertoire())) {
            out.push_back(trial_dir_of(in));
        } else {
            throw std::runtime_error("no manifest or checkpoint at " + in.string());
        }
    }
    return out;
}

MeasuredTrial measure_trial(const fs::path& dir, int threads)
{
    auto ckpt = load_checkpoint(dir);
    const metrics::MeasureOptions options{ckpt.config.grid, ckpt.config.steps, ckpt.config.encoder.pool_size,
                                          threads};
    const auto members = metrics::measure_members(ckpt.repertoire, ckpt.encoder, options);
    return MeasuredTrial{dir, ckpt.config_json,
                         metrics::summarize(members, evolve::to_string(ckpt.config.fitness_mode), ckpt.config.seed)};
}

ComparisonReport compare_runs(std::span<const fs::path> homeostasis, std::span<const fs::path> multi_objective,
                              int threads)
{
    const auto a_dirs = expand_trials(homeostasis);
    const auto b_dirs = expand_trials(multi_objective);
    if (a_dirs.size() < 2 || b_dirs.size() < 2)
        throw std::invalid_argument("compare needs at least two trials per side (got " + std::to_string(a_dirs.size())
                                    + " and " + std::to_string(b_dirs.size()) + ")");

    ComparisonReport report;
    for (const auto& d : a_dirs)
        report.homeostasis.push_back(measure_trial(d, threads));
    for (const auto& d : b_dirs)
        report.multi_objective.push_back(measure_trial(d, threads));

    const auto& reference = report.homeostasis.front();
    auto check = [&](const MeasuredTrial& t) {
        auto keys = config_differences(reference.config, t.config, comparison_ignored_keys());
        if (!keys.empty())
            throw ConfigMismatch(reference.dir.string(), t.dir.string(), std::move(keys));
    };
    for (const auto& t : report.homeostasis)
        check(t);
    for (const auto& t : report.multi_objective)
        check(t);

    std::vector<metrics::TrialSummary> a, b;
    for (const auto& t : report.homeostasis)
        a.push_back(t.summary);
    for (const auto& t : report.multi_objective)
        b.push_back(t.summary);
    report.rows = metrics::compare_trials(a, b);

    std::map<std::uint64_t, double> a_variance;
    for (const auto& s : a)
        a_variance[s.seed] = s.repertoire_variance;
    for (const auto& s : b) {
        if (const auto it = a_variance.find(s.seed); it != a_variance.end()) {
            ++report.seed_pairs;
            if (s.repertoire_variance >= it->second)
                ++report.variance_not_lower;
        }
    }
    return report;
}

void write_report(const fs::path& dir, const ComparisonReport& report)
{
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "trials.csv");
        out << "mode,seed,members,mean_mass,repertoire_variance,mean_complexity,dir\n";
        for (const auto* side : {&report.homeostasis, &report.multi_objective})
            for (const auto& t : *side) {
                const auto& s = t.summary;
                out << s.mode << ',' << s.seed << ',' << s.members << ',' << format_double(s.mean_mass) << ','
                    << format_double(s.repertoire_variance) << ',' << format_double(s.mean_complexity) << ','
                    << t.dir.string() << '\n';
            }
        if (!out)
            throw std::runtime_error("failed writing trials.csv");
    }
    {
        std::ofstream out(dir / "table.csv");
        out << kTableColumns << '\n';
        for (const auto& r : report.rows)
            out << r.metric << ',' << format_double(r.homeostasis) << ',' << format_double(r.multi_objective) << ','
                << (r.delta_percent ? format_double(*r.delta_percent) : std::string{}) << ','
                << format_double(r.test.t) << ',' << format_double(r.test.p) << '\n';
        if (!out)
            throw std::runtime_error("failed writing table.csv");
    }

    nlohmann::json trials = nlohmann::json::array();
    for (const auto* side : {&report.homeostasis, &report.multi_objective})
        for (const auto& t : *side) {
            nlohmann::json j = t.summary;
            j["dir"] = t.dir.string();
            trials.push_back(std::move(j));
        }
    nlohmann::json doc{
        {"columns", {"Metric", "Homeostasis", "Multi-Objective", "Delta", "t", "p"}},
        {"delta_units", "percent of the homeostasis mean"},
        {"test", "pooled two-sample t-test, two-sided"},
        {"variance_convention", "population variance (denominator N) per latent dimension, averaged"},
        {"complexity_units", "gzip KiB per individual"},
        {"rows", report.rows},
        {"trials", std::move(trials)},
        {"variance_direction",
         {{"seed_pairs", report.seed_pairs}, {"multi_objective_not_lower", report.variance_not_lower}}},
        {"limitation", kLimitation},
    };
    write_json(dir / "report.json", doc);
    write_delta_svg(dir / "delta.svg", report.rows);
}

} // namespace lenia_moqd::io
