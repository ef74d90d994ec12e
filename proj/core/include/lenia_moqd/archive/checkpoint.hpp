#pragma once

#include <lenia_moqd/archive/repertoire.hpp>

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace lenia_moqd::archive {

void to_json(nlohmann::json& j, const Individual& ind);
void from_json(const nlohmann::json& j, Individual& ind);

/// JSON-lines file, one Individual per line in member order.
void save_repertoire(const std::string& path, const Repertoire& repertoire);
Repertoire load_repertoire(const std::string& path, std::size_t capacity, int latent_dim);

} // namespace lenia_moqd::archive
