#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "eqbox/coupling.hpp"
#include "eqbox/group.hpp"
#include "eqbox/mmspace.hpp"

namespace eqbox {

using Json = nlohmann::json;

/// Throws IoError or ParseError.
Json read_json_file(const std::filesystem::path& path);
/// Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"labels": [...], "dist": [[...]], "mass": [...]}; labels optional on input.
Json space_to_json(const MMSpace& space);
MMSpace space_from_json(const Json& j);

/// {"plan": [[...]], "muX": [...], "muY": [...]}; marginals optional on input.
Json coupling_to_json(const Coupling& pi);
Coupling coupling_from_json(const Json& j);

Json relation_to_json(const Relation& s);
Relation relation_from_json(const Json& j, std::size_t n, std::size_t m);

Json permutation_to_json(const Permutation& p);

/// {"space": <space object or path>, "generators": [[...], ...]}. A bare space
/// object is read as the trivial action. Relative paths resolve against `base`.
Json action_to_json(const MMAction& action);
MMAction action_from_json(const Json& j, const std::filesystem::path& base = {});

/// Reads either an action file or a plain space file.
MMAction load_action(const std::filesystem::path& path);

}  // namespace eqbox
