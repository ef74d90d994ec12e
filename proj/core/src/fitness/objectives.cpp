#include <lenia_moqd/fitness/objectives.hpp>

#include <algorithm>
#include <cmath>

namespace lenia_moqd::fitness {

double homeostasis(std::span<const Eigen::VectorXd> encodings)
{
    if (encodings.empty())
        throw std::invalid_argument("homeostasis needs a nonempty trace");
    // Offsets from the first encoding keep a constant trace at exactly zero.
    const Eigen::VectorXd& origin = encodings.front();
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(origin.size());
    for (const auto& z : encodings)
        shift += z - origin;
    shift /= static_cast<double>(encodings.size());
    double sum = 0.0;
    for (const auto& z : encodings)
        sum += ((z - origin) - shift).norm();
    return -sum / static_cast<double>(encodings.size());
}

double homeostasis(const descriptor::LatentTrace& trace)
{
    return homeostasis(std::span<const Eigen::VectorXd>(trace.encodings));
}

double distinctiveness(const Eigen::VectorXd& trace_mean, const Eigen::VectorXd& archive_mean)
{
    if (trace_mean.size() != archive_mean.size())
        throw std::invalid_argument("latent dimension mismatch");
    return (trace_mean - archive_mean).norm();
}

double sparsity(const Eigen::VectorXd& descriptor, std::span<const Eigen::VectorXd> archive_descriptors,
                double sigma)
{
    if (!(sigma > 0.0))
        throw ConfigError("sparsity kernel width sigma must be > 0");
    const double inv = 1.0 / (2.0 * sigma * sigma);
    double density = 0.0;
    for (const auto& d : archive_descriptors)
        density += std::exp(-(descriptor - d).squaredNorm() * inv);
    return density == 0.0 ? 0.0 : -density;
}

double median_heuristic_sigma(std::span<const Eigen::VectorXd> descriptors)
{
    std::vector<double> distances;
    for (std::size_t i = 0; i < descriptors.size(); ++i)
        for (std::size_t j = i + 1; j < descriptors.size(); ++j)
            distances.push_back((descriptors[i] - descriptors[j]).norm());
    if (distances.empty())
        return 1.0;
    const auto mid = distances.begin() + static_cast<std::ptrdiff_t>(distances.size() / 2);
    std::nth_element(distances.begin(), mid, distances.end());
    return *mid > 0.0 ? *mid : 1.0;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b)
{
    const bool no_worse = a.homeostasis >= b.homeostasis && a.distinctiveness >= b.distinctiveness
        && a.sparsity >= b.sparsity;
    const bool better = a.homeostasis > b.homeostasis || a.distinctiveness > b.distinctiveness
        || a.sparsity > b.sparsity;
    return no_worse && better;
}

std::size_t domination_count(const ObjectiveVector& x, std::span<const ObjectiveVector> archive)
{
    return static_cast<std::size_t>(
        std::count_if(archive.begin(), archive.end(), [&](const ObjectiveVector& y) { return dominates(y, x); }));
}

double domination_fitness(const ObjectiveVector& x, std::span<const ObjectiveVector> archive)
{
    return -static_cast<double>(domination_count(x, archive));
}

ObjectiveColumns::ObjectiveColumns(std::span<const ObjectiveVector> archive)
{
    f1_.reserve(archive.size());
    f2_.reserve(archive.size());
    f3_.reserve(archive.size());
    for (const auto& o : archive) {
        f1_.push_back(o.homeostasis);
        f2_.push_back(o.distinctiveness);
        f3_.push_back(o.sparsity);
    }
}

std::size_t ObjectiveColumns::dominators_of(const ObjectiveVector& x) const
{
    const double x1 = x.homeostasis;
    const double x2 = x.distinctiveness;
    const double x3 = x.sparsity;
    const std::size_t n = f1_.size();
    const double* a1 = f1_.data();
    const double* a2 = f2_.data();
    const double* a3 = f3_.data();
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned no_worse = static_cast<unsigned>(a1[i] >= x1) & static_cast<unsigned>(a2[i] >= x2)
            & static_cast<unsigned>(a3[i] >= x3);
        const unsigned better = static_cast<unsigned>(a1[i] > x1) | static_cast<unsigned>(a2[i] > x2)
            | static_cast<unsigned>(a3[i] > x3);
        count += no_worse & better;
    }
    return count;
}

std::vector<double> domination_fitness_batch(std::span<const ObjectiveVector> candidates,
                                             std::span<const ObjectiveVector> archive)
{
    const ObjectiveColumns columns(archive);
    std::vector<double> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates)
        out.push_back(-static_cast<double>(columns.dominators_of(c)));
    return out;
}

} // namespace lenia_moqd::fitness
