#include <lenia_moqd/lenia/kernel.hpp>

#include <cmath>
#include <string>

namespace lenia_moqd::lenia {

DegenerateKernelError::DegenerateKernelError(std::size_t kernel_index)
    : std::runtime_error("degenerate kernel " + std::to_string(kernel_index) + ": all discretized values are zero"),
      kernel_index_(kernel_index)
{
}

double growth(double u, double mu, double sigma)
{
    const double d = u - mu;
    return 2.0 * std::exp(-d * d / (2.0 * sigma * sigma)) - 1.0;
}

BuiltKernel build_kernel(const KernelSpec& spec, int base_radius, int height, int width, std::size_t kernel_index)
{
    const RealFft2d fft(height, width);
    return build_kernel(spec, base_radius, fft, kernel_index);
}

BuiltKernel build_kernel(const KernelSpec& spec, int base_radius, const RealFft2d& fft, std::size_t kernel_index)
{
    const int height = fft.height();
    const int width = fft.width();
    const double radius = base_radius * spec.radius_fraction;

    BuiltKernel k;
    k.height = height;
    k.width = width;
    k.spatial.assign(static_cast<std::size_t>(height) * width, 0.0);

    double sum = 0.0;
    for (int y = 0; y < height; ++y) {
        const int dy = y <= height / 2 ? y : y - height;
        for (int x = 0; x < width; ++x) {
            const int dx = x <= width / 2 ? x : x - width;
            const double r = std::sqrt(static_cast<double>(dy * dy + dx * dx)) / radius;
            if (r > 1.0)
                continue;
            double v = 0.0;
            for (const auto& ring : spec.rings) {
                const double d = r - ring.center;
                v += ring.height * std::exp(-d * d / (2.0 * ring.width * ring.width));
            }
            k.spatial[static_cast<std::size_t>(y) * width + x] = v;
            sum += v;
        }
    }
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw DegenerateKernelError(kernel_index);
    for (double& v : k.spatial)
        v /= sum;

    k.spectrum.resize(fft.spectrum_size());
    fft.forward(k.spatial, k.spectrum);
    return k;
}

std::vector<BuiltKernel> build_kernels(const Genome& genome, const RealFft2d& fft)
{
    std::vector<BuiltKernel> out;
    out.reserve(genome.kernels.size());
    for (std::size_t i = 0; i < genome.kernels.size(); ++i)
        out.push_back(build_kernel(genome.kernels[i], genome.base_radius, fft, i));
    return out;
}

} // namespace lenia_moqd::lenia
