#include <lenia_moqd/lenia/fft.hpp>

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace lenia_moqd::lenia {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

struct RealFft2d::Plans {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

RealFft2d::RealFft2d(int height, int width) : height_(height), width_(width), plans_(std::make_unique<Plans>())
{
    if (height <= 0 || width <= 0)
        throw std::invalid_argument("FFT dimensions must be positive");

    std::vector<double> real(static_cast<std::size_t>(height) * width);
    std::vector<std::complex<double>> spec(spectrum_size());
    auto* spec_ptr = reinterpret_cast<fftw_complex*>(spec.data());

    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->forward = fftw_plan_dft_r2c_2d(height, width, real.data(), spec_ptr, flags);
    plans_->inverse = fftw_plan_dft_c2r_2d(height, width, spec_ptr, real.data(), flags);
    if (plans_->forward == nullptr || plans_->inverse == nullptr)
        throw std::runtime_error("FFTW planning failed");
}

RealFft2d::~RealFft2d()
{
    if (!plans_)
        return;
    std::lock_guard lock(planner_mutex());
    if (plans_->forward)
        fftw_destroy_plan(plans_->forward);
    if (plans_->inverse)
        fftw_destroy_plan(plans_->inverse);
}

RealFft2d::RealFft2d(RealFft2d&&) noexcept = default;
RealFft2d& RealFft2d::operator=(RealFft2d&&) noexcept = default;

std::size_t RealFft2d::spectrum_size() const
{
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_ / 2 + 1);
}

void RealFft2d::forward(std::span<const double> spatial, std::span<std::complex<double>> spectrum) const
{
    if (spatial.size() != static_cast<std::size_t>(height_) * width_ || spectrum.size() != spectrum_size())
        throw std::invalid_argument("FFT buffer size mismatch");
    // r2c never writes its input.
    fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(spatial.data()),
                         reinterpret_cast<fftw_complex*>(spectrum.data()));
}

void RealFft2d::inverse(std::span<std::complex<double>> spectrum, std::span<double> spatial) const
{
    if (spatial.size() != static_cast<std::size_t>(height_) * width_ || spectrum.size() != spectrum_size())
        throw std::invalid_argument("FFT buffer size mismatch");
    fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(spectrum.data()), spatial.data());
    const double scale = 1.0 / (static_cast<double>(height_) * width_);
    for (double& v : spatial)
        v *= scale;
}

} // namespace lenia_moqd::lenia
