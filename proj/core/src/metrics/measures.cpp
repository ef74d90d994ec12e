#include <lenia_moqd/metrics/measures.hpp>

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lenia_moqd::metrics {

std::uint8_t quantize(double v)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::uint8_t> quantize_rollout(std::span<const lenia::GridState> frames)
{
    std::vector<std::uint8_t> bytes;
    if (!frames.empty())
        bytes.reserve(frames.size() * frames.front().data().size());
    for (const auto& frame : frames)
        for (double v : frame.data())
            bytes.push_back(quantize(v));
    return bytes;
}

std::size_t gzip_size(std::span<const std::uint8_t> bytes)
{
    z_stream zs{};
    constexpr int kGzipWindowBits = 15 + 16;
    if (deflateInit2(&zs, 6, Z_DEFLATED, kGzipWindowBits, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");

    std::vector<unsigned char> out(64 * 1024);
    std::size_t total = 0;
    std::size_t offset = 0;
    int status = Z_OK;
    do {
        const std::size_t chunk = std::min<std::size_t>(bytes.size() - offset, std::numeric_limits<uInt>::max());
        zs.next_in = const_cast<Bytef*>(bytes.data() + offset);
        zs.avail_in = static_cast<uInt>(chunk);
        offset += chunk;
        const int flush = offset == bytes.size() ? Z_FINISH : Z_NO_FLUSH;
        do {
            zs.next_out = out.data();
            zs.avail_out = static_cast<uInt>(out.size());
            status = deflate(&zs, flush);
            if (status == Z_STREAM_ERROR) {
                deflateEnd(&zs);
                throw std::runtime_error("deflate failed");
            }
            total += out.size() - zs.avail_out;
        } while (zs.avail_out == 0);
    } while (status != Z_STREAM_END);
    deflateEnd(&zs);
    return total;
}

std::size_t complexity_bytes(std::span<const lenia::GridState> frames)
{
    return gzip_size(quantize_rollout(frames));
}

double complexity(const lenia::Rollout& rollout)
{
    if (rollout.frames.empty())
        throw std::invalid_argument("complexity of an empty rollout");
    return static_cast<double>(complexity_bytes(rollout.frames)) / 1024.0;
}

double repertoire_mass(std::span<const lenia::GridState> final_frames)
{
    if (final_frames.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& frame : final_frames)
        sum += lenia::mass(frame);
    return sum / static_cast<double>(final_frames.size());
}

double repertoire_variance(std::span<const Eigen::VectorXd> latents)
{
    if (latents.empty())
        throw std::invalid_argument("variance of an empty repertoire");
    const auto dim = latents.front().size();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (const auto& z : latents) {
        if (z.size() != dim)
            throw std::invalid_argument("latent dimensions differ");
        mean += z;
    }
    mean /= static_cast<double>(latents.size());
    Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
    for (const auto& z : latents)
        var += (z - mean).cwiseAbs2();
    var /= static_cast<double>(latents.size());
    return dim == 0 ? 0.0 : var.mean();
}

} // namespace lenia_moqd::metrics
