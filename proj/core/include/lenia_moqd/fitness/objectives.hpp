#pragma once

#include <lenia_moqd/descriptor/latent.hpp>

#include <Eigen/Core>

#include <span>
#include <stdexcept>
#include <vector>

namespace lenia_moqd::fitness {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Intrinsic objectives, all maximized: homeostasis <= 0, distinctiveness >= 0, sparsity <= 0.
struct ObjectiveVector {
    double homeostasis = 0.0;
    double distinctiveness = 0.0;
    double sparsity = 0.0;

    bool operator==(const ObjectiveVector&) const = default;
};

/// f1 = -(1/n) sum_i ||z_i - z_bar||. Throws std::invalid_argument on an empty trace.
double homeostasis(std::span<const Eigen::VectorXd> encodings);
double homeostasis(const descriptor::LatentTrace& trace);

/// f2 = ||z_bar - E[z_bar]||.
double distinctiveness(const Eigen::VectorXd& trace_mean, const Eigen::VectorXd& archive_mean);

/// f3 = -sum_a exp(-||d - d_a||^2 / (2 sigma^2)). Throws ConfigError for sigma <= 0.
double sparsity(const Eigen::VectorXd& descriptor, std::span<const Eigen::VectorXd> archive_descriptors,
                double sigma);

/// Median pairwise descriptor distance; 1.0 when fewer than two descriptors
/// or when every pair coincides.
double median_heuristic_sigma(std::span<const Eigen::VectorXd> descriptors);

/// a is at least as good as b everywhere and strictly better somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Number of archive members that dominate x.
std::size_t domination_count(const ObjectiveVector& x, std::span<const ObjectiveVector> archive);

/// -(number of archive members that dominate x).
double domination_fitness(const ObjectiveVector& x, std::span<const ObjectiveVector> archive);

/// Archive objectives stored column-wise for batch domination counting.
class ObjectiveColumns {
public:
    ObjectiveColumns() = default;
    explicit ObjectiveColumns(std::span<const ObjectiveVector> archive);

    std::size_t size() const { return f1_.size(); }

    /// Same result as domination_count(x, archive), branch-free over the archive.
    std::size_t dominators_of(const ObjectiveVector& x) const;

private:
    std::vector<double> f1_;
    std::vector<double> f2_;
    std::vector<double> f3_;
};

/// Fitness for each candidate against one archive snapshot.
std::vector<double> domination_fitness_batch(std::span<const ObjectiveVector> candidates,
                                             std::span<const ObjectiveVector> archive);

} // namespace lenia_moqd::fitness
