#include <lenia_moqd/io/trial_io.hpp>

#include <lenia_moqd/archive/checkpoint.hpp>

#include <fstream>
#include <stdexcept>

namespace lenia_moqd::io {

namespace fs = std::filesystem;

std::string trial_dir_name(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

void write_json(const fs::path& path, const nlohmann::json& j)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump(2) << '\n';
        if (!out)
            throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

nlohmann::json read_json(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    return nlohmann::json::parse(in);
}

void save_checkpoint(const TrialPaths& paths, const evolve::Engine& engine)
{
    fs::create_directories(paths.dir);
    const auto& config = engine.config();
    write_json(paths.config(), config);

    auto rep_tmp = paths.repertoire();
    rep_tmp += ".tmp";
    archive::save_repertoire(rep_tmp.string(), engine.repertoire());
    fs::rename(rep_tmp, paths.repertoire());

    auto enc_tmp = paths.encoder_prefix();
    enc_tmp += ".tmp";
    descriptor::save_encoder(enc_tmp.string(), engine.encoder(), config.seed, config.encoder.pool_size,
                             config.grid.channels);
    for (const char* ext : {".bin", ".json"}) {
        auto from = enc_tmp;
        from += ext;
        auto to = paths.encoder_prefix();
        to += ext;
        fs::rename(from, to);
    }

    write_json(paths.state(), {{"generation", engine.generation()},
                               {"finished", engine.finished()},
                               {"archive_size", engine.repertoire().size()}});
}

fs::path trial_dir_of(const fs::path& path)
{
    return fs::is_directory(path) ? path : path.parent_path();
}

TrialCheckpoint load_checkpoint(const fs::path& path)
{
    const TrialPaths paths{trial_dir_of(path)};
    if (!fs::exists(paths.repertoire()))
        throw std::runtime_error("no checkpoint at " + paths.dir.string());
    auto config_json = read_json(paths.config());
    auto config = evolve::config_from_json(config_json);
    auto loaded = descriptor::load_encoder(paths.encoder_prefix().string());
    auto repertoire = archive::load_repertoire(paths.repertoire().string(), static_cast<std::size_t>(config.capacity),
                                               config.encoder.latent_dim);
    const int generation = fs::exists(paths.state()) ? read_json(paths.state()).at("generation").get<int>() : 0;
    return TrialCheckpoint{std::move(config), std::move(config_json), std::move(repertoire), std::move(loaded.vae),
                           generation};
}

} // namespace lenia_moqd::io
