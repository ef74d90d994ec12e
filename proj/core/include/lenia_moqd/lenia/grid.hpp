#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lenia_moqd::lenia {

struct GridShape {
    int height = 64;
    int width = 64;
    int channels = 1;

    std::size_t cells() const { return static_cast<std::size_t>(height) * static_cast<std::size_t>(width); }
    std::size_t values() const { return cells() * static_cast<std::size_t>(channels); }

    bool operator==(const GridShape&) const = default;
};

/// Multi-channel H x W grid of cell activations, stored channel-major.
class GridState {
public:
    GridState() = default;
    explicit GridState(GridShape shape);

    const GridShape& shape() const { return shape_; }

    std::span<double> channel(int c);
    std::span<const double> channel(int c) const;

    double& at(int c, int y, int x) { return values_[index(c, y, x)]; }
    double at(int c, int y, int x) const { return values_[index(c, y, x)]; }

    std::span<double> data() { return values_; }
    std::span<const double> data() const { return values_; }

    bool all_finite() const;

    bool operator==(const GridState&) const = default;

private:
    std::size_t index(int c, int y, int x) const
    {
        return (static_cast<std::size_t>(c) * static_cast<std::size_t>(shape_.height) + static_cast<std::size_t>(y))
            * static_cast<std::size_t>(shape_.width)
            + static_cast<std::size_t>(x);
    }

    GridShape shape_{0, 0, 0};
    std::vector<double> values_;
};

/// Zeroth spatial moment: sum over every cell of every channel.
double total_mass(const GridState& state);

/// total_mass divided by H * W, so values do not depend on grid size.
double mass(const GridState& state);

/// Toroidal roll: result(y, x) = state(y - dy, x - dx).
GridState shifted(const GridState& state, int dy, int dx);

} // namespace lenia_moqd::lenia
