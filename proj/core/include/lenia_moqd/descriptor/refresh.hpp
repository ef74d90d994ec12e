#pragma once

#include <lenia_moqd/archive/repertoire.hpp>
#include <lenia_moqd/descriptor/vae.hpp>

#include <random>

namespace lenia_moqd::descriptor {

struct RefreshOptions {
    int epochs = 3;
    int batch_size = 32;
    float learning_rate = 1e-3f;
    float beta = 0.1f;
};

struct RefreshResult {
    int train_steps = 0;
    /// Mean pre-update loss over the training steps; 0 when epochs == 0.
    double mean_loss = 0.0;
};

/// Trains `vae` on every member's pooled final frame, then re-encodes each
/// member's trace and descriptor and recomputes the archive mean.
/// Every member must carry its EncoderInputs.
RefreshResult refresh(archive::Repertoire& repertoire, Vae& vae, const RefreshOptions& options,
                      std::mt19937_64& rng);

/// Re-encodes traces and descriptors with fixed parameters.
void reencode(archive::Repertoire& repertoire, const Vae& vae);

/// Encodes pooled trace frames into a LatentTrace.
LatentTrace encode_trace(const EncoderInputs& inputs, const Vae& vae);

/// Shuffled minibatch training over a set of pooled frames; one epoch visits every frame once.
RefreshResult train_epochs(Vae& vae, const std::vector<Eigen::VectorXf>& frames, const RefreshOptions& options,
                           std::mt19937_64& rng);

/// `steps` minibatch updates on frames drawn uniformly with replacement.
RefreshResult train_steps(Vae& vae, const std::vector<Eigen::VectorXf>& frames, int steps, int batch_size,
                          float learning_rate, float beta, std::mt19937_64& rng);

} // namespace lenia_moqd::descriptor
