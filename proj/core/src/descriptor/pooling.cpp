#include <lenia_moqd/descriptor/pooling.hpp>

#include <stdexcept>

namespace lenia_moqd::descriptor {

int pooled_length(const lenia::GridShape& shape, int size)
{
    return size * size * shape.channels;
}

Eigen::VectorXf pool_frame(const lenia::GridState& frame, int size)
{
    const auto& s = frame.shape();
    if (size <= 0 || s.height % size != 0 || s.width % size != 0)
        throw std::invalid_argument("grid dimensions must be multiples of the pool size");
    const int fy = s.height / size;
    const int fx = s.width / size;
    const double inv = 1.0 / (static_cast<double>(fy) * fx);

    Eigen::VectorXf out(pooled_length(s, size));
    Eigen::Index i = 0;
    for (int c = 0; c < s.channels; ++c)
        for (int py = 0; py < size; ++py)
            for (int px = 0; px < size; ++px) {
                double sum = 0.0;
                for (int y = py * fy; y < (py + 1) * fy; ++y)
                    for (int x = px * fx; x < (px + 1) * fx; ++x)
                        sum += frame.at(c, y, x);
                out[i++] = static_cast<float>(sum * inv);
            }
    return out;
}

} // namespace lenia_moqd::descriptor
