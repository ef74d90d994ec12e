#pragma once

#include <lenia_moqd/lenia/fft.hpp>
#include <lenia_moqd/lenia/genome.hpp>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lenia_moqd::lenia {

class DegenerateKernelError : public std::runtime_error {
public:
    explicit DegenerateKernelError(std::size_t kernel_index);
    std::size_t kernel_index() const { return kernel_index_; }

private:
    std::size_t kernel_index_;
};

/// A discretized kernel laid out on the full H x W torus with its origin at
/// cell (0, 0), together with its spectrum.
struct BuiltKernel {
    int height = 0;
    int width = 0;
    std::vector<double> spatial;
    std::vector<std::complex<double>> spectrum;
};

/// K(r) = sum_i b_i exp(-(r / (R * radius_fraction) - a_i)^2 / (2 w_i^2)) for
/// r <= R * radius_fraction, zero outside, normalized to unit sum.
BuiltKernel build_kernel(const KernelSpec& spec, int base_radius, int height, int width,
                         std::size_t kernel_index = 0);
BuiltKernel build_kernel(const KernelSpec& spec, int base_radius, const RealFft2d& fft,
                         std::size_t kernel_index = 0);

std::vector<BuiltKernel> build_kernels(const Genome& genome, const RealFft2d& fft);

/// G(u) = 2 exp(-(u - mu)^2 / (2 sigma^2)) - 1.
double growth(double u, double mu, double sigma);

} // namespace lenia_moqd::lenia
