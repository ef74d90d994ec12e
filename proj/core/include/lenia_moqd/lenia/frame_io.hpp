#pragma once

#include <lenia_moqd/lenia/grid.hpp>

#include <string>
#include <vector>

namespace lenia_moqd::lenia {

/// 8-bit grayscale PNG of one channel, value v mapped to round(v * 255).
void write_channel_png(const std::string& path, const GridState& state, int channel);

/// LENF rollout file: "LENF", u32 H, u32 W, u32 C (little-endian), then every
/// frame as little-endian float32 in channel-major order.
void write_lenf(const std::string& path, const std::vector<GridState>& frames);
std::vector<GridState> read_lenf(const std::string& path);

} // namespace lenia_moqd::lenia
