#pragma once

#include <lenia_moqd/lenia/fft.hpp>
#include <lenia_moqd/lenia/genome.hpp>
#include <lenia_moqd/lenia/grid.hpp>
#include <lenia_moqd/lenia/kernel.hpp>

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lenia_moqd::lenia {

struct Rollout {
    std::string genome_id;
    std::vector<GridState> frames;
};

/// Frame 0 for a genome: the seed pattern centered on an otherwise zero grid.
GridState initial_state(const Genome& genome, const GridShape& shape);

/// Toroidal multi-kernel Lenia integrator for one genome.
///
/// Owns its FFT plans and scratch buffers, so one instance must not be shared
/// between threads. Distinct instances are independent.
class Simulator {
public:
    Simulator(Genome genome, GridShape shape);

    const Genome& genome() const { return genome_; }
    const GridShape& shape() const { return shape_; }
    const std::vector<BuiltKernel>& kernels() const { return kernels_; }

    GridState initial_state() const { return lenia::initial_state(genome_, shape_); }

    /// A' = clip(A + dt * sum_k h_k G_k(K_k * A_src(k)), 0, 1), accumulated per target channel.
    void advance(GridState& state);
    GridState step(const GridState& state);

private:
    Genome genome_;
    GridShape shape_;
    RealFft2d fft_;
    std::vector<BuiltKernel> kernels_;
    std::vector<std::vector<std::complex<double>>> channel_spectra_;
    std::vector<bool> source_used_;
    std::vector<std::complex<double>> product_;
    std::vector<double> potential_;
    std::vector<double> delta_;
};

/// Single step with prebuilt kernels. Builds a temporary FFT plan; prefer Simulator in loops.
GridState step(const GridState& state, const Genome& genome, std::span<const BuiltKernel> kernels);

/// T + 1 frames, frame t + 1 = step(frame t). Throws std::invalid_argument when steps < 1.
Rollout simulate(const Genome& genome, const GridShape& shape, int steps, std::string genome_id = {});

/// Streams frames 0..steps to `visit` without retaining them.
void simulate_each(const Genome& genome, const GridShape& shape, int steps,
                   const std::function<void(int, const GridState&)>& visit);

} // namespace lenia_moqd::lenia
