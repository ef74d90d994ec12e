#pragma once

#include <lenia_moqd/archive/individual.hpp>

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace lenia_moqd::archive {

class EmptyRepertoireError : public std::logic_error {
public:
    EmptyRepertoireError() : std::logic_error("repertoire is empty") {}
};

struct InsertResult {
    bool inserted = false;
    std::optional<Individual> evicted;
};

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

/// Frozen view of the archive used to score one batch.
struct ArchiveSnapshot {
    std::vector<fitness::ObjectiveVector> objectives;
    std::vector<Eigen::VectorXd> descriptors;
    Eigen::VectorXd mean;

    bool empty() const { return descriptors.empty(); }
};

/// Fixed-capacity unstructured archive.
///
/// While below capacity every candidate is appended. Once full, a candidate
/// replaces its nearest member in descriptor space only if its fitness is
/// strictly higher. `archive_mean` is the mean of members' z-bar and is
/// recomputed from scratch after every membership change.
class Repertoire {
public:
    Repertoire(std::size_t capacity, int latent_dim);

    std::size_t capacity() const { return capacity_; }
    int latent_dim() const { return latent_dim_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool full() const { return members_.size() >= capacity_; }

    std::span<const Individual> members() const { return members_; }
    /// Mutable access for re-encoding; call recompute_statistics() afterwards.
    std::span<Individual> mutable_members() { return members_; }

    const Eigen::VectorXd& archive_mean() const { return archive_mean_; }
    /// Descriptor distance at the most recent replacement, 0 until the archive fills.
    double novelty_threshold() const { return novelty_threshold_; }

    InsertResult try_insert(Individual candidate);

    /// k nearest members by Euclidean descriptor distance, ascending, ties by
    /// lower index. k larger than size() returns every member.
    std::vector<Neighbor> nearest(const Eigen::VectorXd& descriptor, std::size_t k) const;

    std::vector<std::size_t> sample_parent_indices(std::size_t batch, std::mt19937_64& rng) const;
    std::vector<lenia::Genome> sample_parents(std::size_t batch, std::mt19937_64& rng) const;

    const Individual* find(const std::string& id) const;

    ArchiveSnapshot snapshot() const;
    void recompute_statistics();

private:
    std::size_t capacity_;
    int latent_dim_;
    std::vector<Individual> members_;
    Eigen::VectorXd archive_mean_;
    double novelty_threshold_ = 0.0;
};

} // namespace lenia_moqd::archive
