#include <lenia_moqd/lenia/grid.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lenia_moqd::lenia {

GridState::GridState(GridShape shape) : shape_(shape)
{
    if (shape.height <= 0 || shape.width <= 0 || shape.channels <= 0)
        throw std::invalid_argument("grid dimensions must be positive");
    values_.assign(shape.values(), 0.0);
}

std::span<double> GridState::channel(int c)
{
    return std::span<double>(values_).subspan(static_cast<std::size_t>(c) * shape_.cells(), shape_.cells());
}

std::span<const double> GridState::channel(int c) const
{
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(c) * shape_.cells(), shape_.cells());
}

bool GridState::all_finite() const
{
    for (double v : values_)
        if (!std::isfinite(v))
            return false;
    return true;
}

double total_mass(const GridState& state)
{
    const auto values = state.data();
    return std::accumulate(values.begin(), values.end(), 0.0);
}

double mass(const GridState& state)
{
    const auto cells = state.shape().cells();
    return cells == 0 ? 0.0 : total_mass(state) / static_cast<double>(cells);
}

GridState shifted(const GridState& state, int dy, int dx)
{
    const auto& s = state.shape();
    GridState out(s);
    const int oy = ((dy % s.height) + s.height) % s.height;
    const int ox = ((dx % s.width) + s.width) % s.width;
    for (int c = 0; c < s.channels; ++c)
        for (int y = 0; y < s.height; ++y)
            for (int x = 0; x < s.width; ++x)
                out.at(c, (y + oy) % s.height, (x + ox) % s.width) = state.at(c, y, x);
    return out;
}

} // namespace lenia_moqd::lenia
