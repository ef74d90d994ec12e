#include <lenia_moqd/io/manifest.hpp>

#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace lenia_moqd::io {

std::vector<std::uint64_t> RunManifest::seeds() const
{
    std::vector<std::uint64_t> out;
    for (const auto& t : trials)
        out.push_back(t.seed);
    return out;
}

void to_json(nlohmann::json& j, const TrialEntry& e)
{
    j = {{"seed", e.seed}, {"checkpoint", e.checkpoint}, {"status", e.status}};
    if (!e.error.empty())
        j["error"] = e.error;
}

void from_json(const nlohmann::json& j, TrialEntry& e)
{
    j.at("seed").get_to(e.seed);
    j.at("checkpoint").get_to(e.checkpoint);
    j.at("status").get_to(e.status);
    e.error = j.value("error", std::string{});
}

void to_json(nlohmann::json& j, const RunManifest& m)
{
    j = {{"config_hash", m.config_hash},
         {"code_version", m.code_version},
         {"mode", m.mode},
         {"seeds", m.seeds()},
         {"started", m.started},
         {"finished", m.finished},
         {"status", m.status},
         {"trials", m.trials}};
}

void from_json(const nlohmann::json& j, RunManifest& m)
{
    j.at("config_hash").get_to(m.config_hash);
    j.at("code_version").get_to(m.code_version);
    j.at("mode").get_to(m.mode);
    j.at("started").get_to(m.started);
    j.at("finished").get_to(m.finished);
    j.at("status").get_to(m.status);
    j.at("trials").get_to(m.trials);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << nlohmann::json(manifest).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

RunManifest read_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    return nlohmann::json::parse(in).get<RunManifest>();
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* code_version() { return LENIA_MOQD_VERSION; }

} // namespace lenia_moqd::io
