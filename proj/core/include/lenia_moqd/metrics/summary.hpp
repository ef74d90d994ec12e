#pragma once

#include <lenia_moqd/archive/repertoire.hpp>
#include <lenia_moqd/descriptor/vae.hpp>
#include <lenia_moqd/metrics/stats.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lenia_moqd::metrics {

struct TrialSummary {
    std::string mode;
    std::uint64_t seed = 0;
    std::size_t members = 0;
    double mean_mass = 0.0;
    double repertoire_variance = 0.0;
    /// Compressed KiB per individual.
    double mean_complexity = 0.0;
};

struct MemberMeasure {
    std::string id;
    double mass = 0.0;
    double complexity = 0.0;
    Eigen::VectorXd latent;
};

struct MeasureOptions {
    lenia::GridShape grid;
    int steps = 200;
    int pool_size = 32;
    int threads = 1;
};

/// Re-simulates every member, then measures final-frame mass, rollout
/// complexity and the fixed encoder's latent of the final frame.
std::vector<MemberMeasure> measure_members(const archive::Repertoire& repertoire, const descriptor::Vae& encoder,
                                           const MeasureOptions& options);

TrialSummary summarize(std::span<const MemberMeasure> members, std::string mode, std::uint64_t seed);

struct ComparisonRow {
    std::string metric;
    double homeostasis = 0.0;
    double multi_objective = 0.0;
    /// 100 * (multi_objective - homeostasis) / |homeostasis|; empty when the baseline is 0 and the means differ.
    std::optional<double> delta_percent;
    TTestResult test;
};

/// One row each for mass, variance and complexity, in that order.
std::vector<ComparisonRow> compare_trials(std::span<const TrialSummary> homeostasis,
                                          std::span<const TrialSummary> multi_objective);

void to_json(nlohmann::json& j, const TrialSummary& s);
void from_json(const nlohmann::json& j, TrialSummary& s);
void to_json(nlohmann::json& j, const ComparisonRow& row);

} // namespace lenia_moqd::metrics
