#pragma once

#include <lenia_moqd/lenia/grid.hpp>
#include <lenia_moqd/lenia/simulator.hpp>

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lenia_moqd::metrics {

/// round(v * 255) with v clamped to [0, 1].
std::uint8_t quantize(double v);

/// Every frame quantized and concatenated channel-major, frame after frame.
std::vector<std::uint8_t> quantize_rollout(std::span<const lenia::GridState> frames);

/// Size of the gzip stream (DEFLATE level 6) of `bytes`.
std::size_t gzip_size(std::span<const std::uint8_t> bytes);

/// Compressed bytes of the quantized rollout.
std::size_t complexity_bytes(std::span<const lenia::GridState> frames);

/// complexity_bytes / 1024. Throws std::invalid_argument on an empty rollout.
double complexity(const lenia::Rollout& rollout);

/// Mean per-cell-normalized mass of the given final frames; 0 for none.
double repertoire_mass(std::span<const lenia::GridState> final_frames);

/// Per-dimension population variance (denominator N) across latents, averaged over dimensions.
/// Throws std::invalid_argument when empty or when dimensions differ.
double repertoire_variance(std::span<const Eigen::VectorXd> latents);

} // namespace lenia_moqd::metrics
