#pragma once

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace lenia_moqd::descriptor {

/// Latent encodings z_i of sampled rollout frames.
struct LatentTrace {
    std::vector<int> frame_indices;
    std::vector<Eigen::VectorXd> encodings;

    /// z-bar, the mean encoding. Empty trace gives an empty vector.
    Eigen::VectorXd mean() const;
};

/// Pooled encoder inputs for the sampled frames of one rollout. The last entry
/// is always the final frame.
struct EncoderInputs {
    std::vector<int> frame_indices;
    std::vector<Eigen::VectorXf> frames;

    const Eigen::VectorXf& final_frame() const { return frames.back(); }
};

/// `samples` evenly spaced frame indices over the second half of a
/// `steps`-step rollout, ending at the final frame `steps`.
std::vector<int> trace_frame_indices(int steps, int samples);

} // namespace lenia_moqd::descriptor
