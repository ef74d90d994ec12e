#include <lenia_moqd/metrics/summary.hpp>

#include <lenia_moqd/descriptor/pooling.hpp>
#include <lenia_moqd/evolve/parallel.hpp>
#include <lenia_moqd/metrics/measures.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <functional>

namespace lenia_moqd::metrics {

std::vector<MemberMeasure> measure_members(const archive::Repertoire& repertoire, const descriptor::Vae& encoder,
                                           const MeasureOptions& options)
{
    const auto members = repertoire.members();
    std::vector<MemberMeasure> out(members.size());
    evolve::parallel_for(members.size(), options.threads, [&](std::size_t i) {
        const auto rollout = lenia::simulate(members[i].genome, options.grid, options.steps, members[i].id);
        const auto& last = rollout.frames.back();
        auto& m = out[i];
        m.id = members[i].id;
        m.mass = lenia::mass(last);
        m.complexity = complexity(rollout);
        m.latent = encoder.encode(descriptor::pool_frame(last, options.pool_size)).cast<double>();
    });
    return out;
}

TrialSummary summarize(std::span<const MemberMeasure> members, std::string mode, std::uint64_t seed)
{
    TrialSummary s;
    s.mode = std::move(mode);
    s.seed = seed;
    s.members = members.size();
    if (members.empty())
        return s;
    std::vector<Eigen::VectorXd> latents;
    for (const auto& m : members) {
        s.mean_mass += m.mass;
        s.mean_complexity += m.complexity;
        latents.push_back(m.latent);
    }
    s.mean_mass /= static_cast<double>(members.size());
    s.mean_complexity /= static_cast<double>(members.size());
    s.repertoire_variance = repertoire_variance(latents);
    return s;
}

namespace {

ComparisonRow compare_metric(std::string name, std::span<const TrialSummary> h, std::span<const TrialSummary> m,
                             const std::function<double(const TrialSummary&)>& get)
{
    std::vector<double> a, b;
    for (const auto& s : h)
        a.push_back(get(s));
    for (const auto& s : m)
        b.push_back(get(s));
    ComparisonRow row;
    row.metric = std::move(name);
    for (double v : a)
        row.homeostasis += v / static_cast<double>(a.size());
    for (double v : b)
        row.multi_objective += v / static_cast<double>(b.size());
    if (row.homeostasis != 0.0)
        row.delta_percent = 100.0 * (row.multi_objective - row.homeostasis) / std::abs(row.homeostasis);
    else if (row.multi_objective == 0.0)
        row.delta_percent = 0.0;
    // Sign convention follows the Delta column: positive t means multi-objective is larger.
    row.test = pooled_t_test(b, a);
    return row;
}

} // namespace

std::vector<ComparisonRow> compare_trials(std::span<const TrialSummary> homeostasis,
                                          std::span<const TrialSummary> multi_objective)
{
    return {
        compare_metric("Mass", homeostasis, multi_objective, [](const auto& s) { return s.mean_mass; }),
        compare_metric("Variance", homeostasis, multi_objective, [](const auto& s) { return s.repertoire_variance; }),
        compare_metric("Complexity", homeostasis, multi_objective, [](const auto& s) { return s.mean_complexity; }),
    };
}

void to_json(nlohmann::json& j, const TrialSummary& s)
{
    j = {{"mode", s.mode},
         {"seed", s.seed},
         {"members", s.members},
         {"mean_mass", s.mean_mass},
         {"repertoire_variance", s.repertoire_variance},
         {"mean_complexity", s.mean_complexity}};
}

void from_json(const nlohmann::json& j, TrialSummary& s)
{
    j.at("mode").get_to(s.mode);
    j.at("seed").get_to(s.seed);
    j.at("members").get_to(s.members);
    j.at("mean_mass").get_to(s.mean_mass);
    j.at("repertoire_variance").get_to(s.repertoire_variance);
    j.at("mean_complexity").get_to(s.mean_complexity);
}

void to_json(nlohmann::json& j, const ComparisonRow& row)
{
    auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    j = {{"metric", row.metric},
         {"homeostasis", row.homeostasis},
         {"multi_objective", row.multi_objective},
         {"delta_percent", row.delta_percent ? number(*row.delta_percent) : nlohmann::json(nullptr)},
         {"t", number(row.test.t)},
         {"p", row.test.p},
         {"df", row.test.df},
         {"degenerate_variance", row.test.degenerate_variance}};
}

} // namespace lenia_moqd::metrics
