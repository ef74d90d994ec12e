#include <lenia_moqd/archive/checkpoint.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <vector>

namespace lenia_moqd::archive {

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd json_vector(const nlohmann::json& j)
{
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

} // namespace

void to_json(nlohmann::json& j, const Individual& ind)
{
    nlohmann::json encodings = nlohmann::json::array();
    for (const auto& z : ind.trace.encodings)
        encodings.push_back(vector_json(z));
    j = nlohmann::json{{"id", ind.id},
                       {"birth_generation", ind.birth_generation},
                       {"fitness", ind.fitness},
                       {"objectives",
                        {{"homeostasis", ind.objectives.homeostasis},
                         {"distinctiveness", ind.objectives.distinctiveness},
                         {"sparsity", ind.objectives.sparsity}}},
                       {"descriptor", vector_json(ind.descriptor)},
                       {"trace", {{"frame_indices", ind.trace.frame_indices}, {"encodings", encodings}}},
                       {"genome", ind.genome}};
}

void from_json(const nlohmann::json& j, Individual& ind)
{
    j.at("id").get_to(ind.id);
    j.at("birth_generation").get_to(ind.birth_generation);
    j.at("fitness").get_to(ind.fitness);
    const auto& o = j.at("objectives");
    o.at("homeostasis").get_to(ind.objectives.homeostasis);
    o.at("distinctiveness").get_to(ind.objectives.distinctiveness);
    o.at("sparsity").get_to(ind.objectives.sparsity);
    ind.descriptor = json_vector(j.at("descriptor"));
    const auto& t = j.at("trace");
    t.at("frame_indices").get_to(ind.trace.frame_indices);
    ind.trace.encodings.clear();
    for (const auto& z : t.at("encodings"))
        ind.trace.encodings.push_back(json_vector(z));
    j.at("genome").get_to(ind.genome);
    ind.inputs.reset();
}

void save_repertoire(const std::string& path, const Repertoire& repertoire)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    for (const auto& m : repertoire.members())
        out << nlohmann::json(m).dump() << '\n';
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

Repertoire load_repertoire(const std::string& path, std::size_t capacity, int latent_dim)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    Repertoire rep(capacity, latent_dim);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        Individual ind;
        try {
            ind = nlohmann::json::parse(line).get<Individual>();
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (rep.full())
            throw std::runtime_error(path + " holds more members than capacity " + std::to_string(capacity));
        rep.try_insert(std::move(ind));
    }
    return rep;
}

} // namespace lenia_moqd::archive
