#pragma once

#include <lenia_moqd/descriptor/latent.hpp>
#include <lenia_moqd/fitness/objectives.hpp>
#include <lenia_moqd/lenia/genome.hpp>

#include <Eigen/Core>

#include <memory>
#include <string>

namespace lenia_moqd::archive {

struct Individual {
    std::string id;
    lenia::Genome genome;
    /// Encoding of the final rollout frame.
    Eigen::VectorXd descriptor;
    descriptor::LatentTrace trace;
    fitness::ObjectiveVector objectives;
    double fitness = 0.0;
    int birth_generation = 0;
    /// Pooled frames behind `trace`. Runtime cache only; not serialized.
    std::shared_ptr<const descriptor::EncoderInputs> inputs;

    /// z-bar of the stored trace.
    Eigen::VectorXd trace_mean() const { return trace.mean(); }
};

} // namespace lenia_moqd::archive
