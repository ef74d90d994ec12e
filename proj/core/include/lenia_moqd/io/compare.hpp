#pragma once

#include <lenia_moqd/metrics/summary.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lenia_moqd::io {

class ConfigMismatch : public std::runtime_error {
public:
    ConfigMismatch(std::string first, std::string other, std::vector<std::string> keys);
    const std::vector<std::string>& keys() const { return keys_; }

private:
    std::vector<std::string> keys_;
};

/// Config keys allowed to differ between compared trials.
const std::set<std::string>& comparison_ignored_keys();

/// Expands run directories (holding manifest.json) into their completed trial
/// directories; trial directories pass through unchanged.
std::vector<std::filesystem::path> expand_trials(std::span<const std::filesystem::path> inputs);

struct MeasuredTrial {
    std::filesystem::path dir;
    nlohmann::json config;
    metrics::TrialSummary summary;
};

/// Loads a checkpoint and measures its final repertoire with the trial's own encoder.
MeasuredTrial measure_trial(const std::filesystem::path& dir, int threads);

struct ComparisonReport {
    std::vector<MeasuredTrial> homeostasis;
    std::vector<MeasuredTrial> multi_objective;
    std::vector<metrics::ComparisonRow> rows;
    /// Seeds present on both sides, and how many of them have multi-objective variance >= homeostasis.
    int seed_pairs = 0;
    int variance_not_lower = 0;
};

/// Throws std::invalid_argument with fewer than two trials per side and
/// ConfigMismatch when configs differ outside comparison_ignored_keys().
ComparisonReport compare_runs(std::span<const std::filesystem::path> homeostasis,
                              std::span<const std::filesystem::path> multi_objective, int threads);

/// trials.csv, table.csv, report.json and delta.svg under `dir`.
void write_report(const std::filesystem::path& dir, const ComparisonReport& report);

inline constexpr const char* kTableColumns = "Metric,Homeostasis,Multi-Objective,Delta,t,p";

} // namespace lenia_moqd::io
