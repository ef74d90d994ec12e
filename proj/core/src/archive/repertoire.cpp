#include <lenia_moqd/archive/repertoire.hpp>

#include <algorithm>
#include <numeric>

namespace lenia_moqd::archive {

Repertoire::Repertoire(std::size_t capacity, int latent_dim)
    : capacity_(capacity), latent_dim_(latent_dim), archive_mean_(Eigen::VectorXd::Zero(latent_dim))
{
    if (capacity == 0)
        throw std::invalid_argument("repertoire capacity must be >= 1");
    if (latent_dim <= 0)
        throw std::invalid_argument("latent dimension must be >= 1");
    members_.reserve(capacity);
}

InsertResult Repertoire::try_insert(Individual candidate)
{
    if (candidate.descriptor.size() != latent_dim_)
        throw std::invalid_argument("candidate descriptor has the wrong dimension");
    if (candidate.trace.encodings.empty())
        throw std::invalid_argument("candidate " + candidate.id + " has an empty latent trace");
    for (const auto& z : candidate.trace.encodings)
        if (z.size() != latent_dim_)
            throw std::invalid_argument("candidate trace encoding has the wrong dimension");

    InsertResult result;
    if (members_.size() < capacity_) {
        members_.push_back(std::move(candidate));
        result.inserted = true;
        recompute_statistics();
        return result;
    }

    const auto closest = nearest(candidate.descriptor, 1).front();
    auto& incumbent = members_[closest.index];
    if (!(candidate.fitness > incumbent.fitness))
        return result;

    result.inserted = true;
    result.evicted = std::move(incumbent);
    incumbent = std::move(candidate);
    novelty_threshold_ = closest.distance;
    recompute_statistics();
    return result;
}

std::vector<Neighbor> Repertoire::nearest(const Eigen::VectorXd& descriptor, std::size_t k) const
{
    if (members_.empty())
        throw EmptyRepertoireError();
    if (k == 0)
        throw std::invalid_argument("k must be >= 1");

    std::vector<Neighbor> all(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i)
        all[i] = Neighbor{i, (members_[i].descriptor - descriptor).norm()};
    const auto keep = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                          return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
                      });
    all.resize(keep);
    return all;
}

std::vector<std::size_t> Repertoire::sample_parent_indices(std::size_t batch, std::mt19937_64& rng) const
{
    if (members_.empty())
        throw EmptyRepertoireError();
    std::uniform_int_distribution<std::size_t> pick(0, members_.size() - 1);
    std::vector<std::size_t> out(batch);
    for (auto& i : out)
        i = pick(rng);
    return out;
}

std::vector<lenia::Genome> Repertoire::sample_parents(std::size_t batch, std::mt19937_64& rng) const
{
    std::vector<lenia::Genome> out;
    out.reserve(batch);
    for (auto i : sample_parent_indices(batch, rng))
        out.push_back(members_[i].genome);
    return out;
}

const Individual* Repertoire::find(const std::string& id) const
{
    const auto it = std::find_if(members_.begin(), members_.end(), [&](const Individual& m) { return m.id == id; });
    return it == members_.end() ? nullptr : &*it;
}

ArchiveSnapshot Repertoire::snapshot() const
{
    ArchiveSnapshot snap;
    snap.objectives.reserve(members_.size());
    snap.descriptors.reserve(members_.size());
    for (const auto& m : members_) {
        snap.objectives.push_back(m.objectives);
        snap.descriptors.push_back(m.descriptor);
    }
    snap.mean = archive_mean_;
    return snap;
}

void Repertoire::recompute_statistics()
{
    archive_mean_ = Eigen::VectorXd::Zero(latent_dim_);
    if (members_.empty())
        return;
    for (const auto& m : members_) {
        if (m.trace.encodings.empty() || m.trace.encodings.front().size() != latent_dim_)
            throw std::logic_error("member " + m.id + " has no usable latent trace");
        archive_mean_ += m.trace_mean();
    }
    archive_mean_ /= static_cast<double>(members_.size());
}

} // namespace lenia_moqd::archive
