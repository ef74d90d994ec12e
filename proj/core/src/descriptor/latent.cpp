#include <lenia_moqd/descriptor/latent.hpp>

#include <cmath>
#include <stdexcept>

namespace lenia_moqd::descriptor {

Eigen::VectorXd LatentTrace::mean() const
{
    if (encodings.empty())
        return {};
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(encodings.front().size());
    for (const auto& z : encodings)
        sum += z;
    return sum / static_cast<double>(encodings.size());
}

std::vector<int> trace_frame_indices(int steps, int samples)
{
    if (steps < 1 || samples < 1)
        throw std::invalid_argument("trace needs steps >= 1 and samples >= 1");
    const int first = steps / 2;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(samples));
    if (samples == 1) {
        out.push_back(steps);
        return out;
    }
    const double span = static_cast<double>(steps - first);
    for (int k = 0; k < samples; ++k)
        out.push_back(first + static_cast<int>(std::lround(span * k / (samples - 1))));
    return out;
}

} // namespace lenia_moqd::descriptor
