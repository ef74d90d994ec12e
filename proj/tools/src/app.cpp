#include <lenia_moqd_cli/app.hpp>

#include <lenia_moqd/archive/repertoire.hpp>
#include <lenia_moqd/evolve/engine.hpp>
#include <lenia_moqd/io/compare.hpp>
#include <lenia_moqd/io/run.hpp>
#include <lenia_moqd/io/trial_io.hpp>
#include <lenia_moqd/lenia/frame_io.hpp>
#include <lenia_moqd/lenia/simulator.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace lenia_moqd::cli {

namespace fs = std::filesystem;

namespace {

class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_seeds(const std::string& csv)
{
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || item.front() == '-')
            throw evolve::ConfigError("seeds", "expected comma-separated non-negative integers, got '" + csv + "'");
        seeds.push_back(v);
    }
    if (seeds.empty())
        throw evolve::ConfigError("seeds", "at least one seed is required");
    return seeds;
}

struct EvolveArgs {
    std::string config;
    std::string out;
    std::string seeds;
    std::string mode;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out)
{
    io::ExperimentRequest request{io::load_config(a.config), a.out, parse_seeds(a.seeds), std::nullopt};
    if (!a.mode.empty())
        request.mode = evolve::parse_fitness_mode(a.mode);
    const auto manifest = io::run_experiment(request, out);
    out << "manifest " << (fs::path(a.out) / "manifest.json").string() << " (" << manifest.status << ")\n";
    return manifest.status == "complete" ? kOk : kRuntimeError;
}

struct CompareArgs {
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::string out;
};

int cmd_compare(const CompareArgs& args, std::ostream& out)
{
    const std::vector<fs::path> a(args.a.begin(), args.a.end());
    const std::vector<fs::path> b(args.b.begin(), args.b.end());
    const auto report = io::compare_runs(a, b, evolve::resolve_threads(0));
    io::write_report(args.out, report);
    for (const auto& row : report.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%-10s  H=%.6g  MO=%.6g  delta=%s%%  t=%.4g  p=%.4g\n", row.metric.c_str(),
                      row.homeostasis, row.multi_objective,
                      row.delta_percent ? std::to_string(*row.delta_percent).c_str() : "n/a", row.test.t,
                      row.test.p);
        out << line;
    }
    out << "report written to " << args.out << '\n';
    return kOk;
}

struct RenderArgs {
    std::string checkpoint;
    std::string id;
    int steps = 0;
    std::string out;
};

int cmd_render(const RenderArgs& a, std::ostream& out)
{
    const auto ckpt = io::load_checkpoint(a.checkpoint);
    const auto* member = ckpt.repertoire.find(a.id);
    if (!member)
        throw LookupError("no individual '" + a.id + "' in " + a.checkpoint);
    const auto rollout = lenia::simulate(member->genome, ckpt.config.grid, a.steps, a.id);
    fs::create_directories(a.out);
    const int width = std::max<int>(4, static_cast<int>(std::to_string(a.steps).size()));
    for (std::size_t t = 0; t < rollout.frames.size(); ++t)
        for (int c = 0; c < ckpt.config.grid.channels; ++c) {
            char name[64];
            std::snprintf(name, sizeof name, "frame_%0*zu_c%d.png", width, t, c);
            lenia::write_channel_png((fs::path(a.out) / name).string(), rollout.frames[t], c);
        }
    lenia::write_lenf((fs::path(a.out) / "rollout.lenf").string(), rollout.frames);
    out << "rendered " << rollout.frames.size() << " frames of " << a.id << " to " << a.out << '\n';
    return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lenia multi-objective quality-diversity experiments", "lenia_moqd"};
    app.require_subcommand(1);

    EvolveArgs evolve_args;
    auto* evolve_cmd = app.add_subcommand("evolve", "Run one trial per seed");
    evolve_cmd->add_option("--config", evolve_args.config, "JSON config file")->required();
    evolve_cmd->add_option("--out", evolve_args.out, "Output directory")->required();
    evolve_cmd->add_option("--seeds", evolve_args.seeds, "Comma-separated seeds")->required();
    evolve_cmd->add_option("--mode", evolve_args.mode, "homeostasis or multi_objective (default: from config)");

    CompareArgs compare_args;
    auto* compare_cmd = app.add_subcommand("compare", "Compare final repertoires of two fitness modes");
    compare_cmd->add_option("--a", compare_args.a, "Homeostasis runs or trial directories")->required();
    compare_cmd->add_option("--b", compare_args.b, "Multi-objective runs or trial directories")->required();
    compare_cmd->add_option("--out", compare_args.out, "Report directory")->required();

    RenderArgs render_args;
    auto* render_cmd = app.add_subcommand("render", "Render one archived individual");
    render_cmd->add_option("--checkpoint", render_args.checkpoint, "Trial directory or repertoire.jsonl")
        ->required();
    render_cmd->add_option("--id", render_args.id, "Individual id")->required();
    render_cmd->add_option("--steps", render_args.steps, "Simulation steps")->required()->check(CLI::PositiveNumber);
    render_cmd->add_option("--out", render_args.out, "Output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*evolve_cmd)
            return cmd_evolve(evolve_args, out);
        if (*compare_cmd)
            return cmd_compare(compare_args, out);
        return cmd_render(render_args, out);
    } catch (const io::ConfigNotFound& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const evolve::ConfigError& e) {
        err << "error: invalid config: " << e.what() << '\n';
        return kConfigError;
    } catch (const io::ConfigMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const LookupError& e) {
        err << "error: " << e.what() << '\n';
        return kLookupError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace lenia_moqd::cli
