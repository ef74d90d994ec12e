#pragma once

#include <lenia_moqd/evolve/engine.hpp>
#include <lenia_moqd/metrics/summary.hpp>

#include <filesystem>
#include <span>

namespace lenia_moqd::io {

/// Three stacked panels with the per-generation batch means of f1, f2 and f3.
void write_trajectory_svg(const std::filesystem::path& path, std::span<const evolve::GenerationLog> logs);

/// Horizontal bar per metric showing the multi-objective Delta in percent.
void write_delta_svg(const std::filesystem::path& path, std::span<const metrics::ComparisonRow> rows);

} // namespace lenia_moqd::io
