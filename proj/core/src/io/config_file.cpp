#include <lenia_moqd/io/config_file.hpp>

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

namespace lenia_moqd::io {

LoadedConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in || std::filesystem::is_directory(path))
        throw ConfigNotFound(path);
    LoadedConfig loaded;
    try {
        loaded.source = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw evolve::ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    loaded.config = evolve::config_from_json(loaded.source);
    loaded.hash = config_hash(loaded.source);
    return loaded;
}

std::string sha256_hex(std::string_view bytes)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string config_hash(const nlohmann::json& config) { return sha256_hex(config.dump()); }

namespace {

void diff(const nlohmann::json& a, const nlohmann::json& b, const std::string& path,
          const std::set<std::string>& ignored, std::vector<std::string>& out)
{
    if (ignored.contains(path))
        return;
    if (a.is_object() && b.is_object()) {
        std::set<std::string> keys;
        for (const auto& [k, _] : a.items())
            keys.insert(k);
        for (const auto& [k, _] : b.items())
            keys.insert(k);
        for (const auto& k : keys) {
            const std::string child = path.empty() ? k : path + "." + k;
            if (!a.contains(k) || !b.contains(k)) {
                if (!ignored.contains(child))
                    out.push_back(child);
                continue;
            }
            diff(a.at(k), b.at(k), child, ignored, out);
        }
        return;
    }
    if (a != b)
        out.push_back(path.empty() ? "<root>" : path);
}

} // namespace

std::vector<std::string> config_differences(const nlohmann::json& a, const nlohmann::json& b,
                                            const std::set<std::string>& ignored)
{
    std::vector<std::string> out;
    diff(a, b, "", ignored, out);
    return out;
}

} // namespace lenia_moqd::io
