#pragma once

#include <lenia_moqd/evolve/config.hpp>
#include <lenia_moqd/lenia/genome.hpp>

#include <random>

namespace lenia_moqd::evolve {

/// Gaussian perturbation of every continuous parameter, clamped to its valid
/// range. A zero scale leaves that parameter untouched.
lenia::Genome mutate(const lenia::Genome& parent, const MutationScales& scales, const lenia::GridShape& shape,
                     std::mt19937_64& rng);

/// Uniform sample from the bootstrap ranges; always valid for `shape`.
lenia::Genome random_genome(const InitRanges& ranges, const lenia::GridShape& shape, std::mt19937_64& rng);

/// Independent stream for (seed, generation, index, stream tag).
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t index, std::uint64_t stream);

} // namespace lenia_moqd::evolve
