#pragma once

#include <complex>
#include <memory>
#include <span>

namespace lenia_moqd::lenia {

/// Real-to-complex 2-D FFT of a fixed H x W size (FFTW backend).
///
/// Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so that results are
/// bit-reproducible regardless of buffer alignment. Executing a plan is
/// thread-safe; construction and destruction are serialized internally.
class RealFft2d {
public:
    RealFft2d(int height, int width);
    ~RealFft2d();

    RealFft2d(const RealFft2d&) = delete;
    RealFft2d& operator=(const RealFft2d&) = delete;
    RealFft2d(RealFft2d&&) noexcept;
    RealFft2d& operator=(RealFft2d&&) noexcept;

    int height() const { return height_; }
    int width() const { return width_; }
    /// Number of complex coefficients: H * (W / 2 + 1).
    std::size_t spectrum_size() const;

    void forward(std::span<const double> spatial, std::span<std::complex<double>> spectrum) const;
    /// Normalized inverse, so inverse(forward(x)) == x up to round-off. `spectrum` is used as scratch.
    void inverse(std::span<std::complex<double>> spectrum, std::span<double> spatial) const;

private:
    struct Plans;

    int height_ = 0;
    int width_ = 0;
    std::unique_ptr<Plans> plans_;
};

} // namespace lenia_moqd::lenia
