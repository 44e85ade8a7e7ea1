#include "eqbox/io.hpp"

#include <fstream>
#include <sstream>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

Json space_to_json(const MMSpace& space) {
  const RawSpace raw = space.raw();
  return Json{{"labels", raw.labels}, {"dist", raw.dist}, {"mass", raw.mass}};
}

MMSpace space_from_json(const Json& j) {
  RawSpace raw;
  raw.dist = get_as<std::vector<std::vector<double>>>(field(j, "dist"), "dist");
  raw.mass = get_as<std::vector<double>>(field(j, "mass"), "mass");
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) raw.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return validate_space(raw);
}

Json coupling_to_json(const Coupling& pi) {
  return Json{{"plan", pi.plan().to_rows()}, {"muX", pi.muX()}, {"muY", pi.muY()}};
}

Coupling coupling_from_json(const Json& j) {
  const auto rows = get_as<std::vector<std::vector<double>>>(field(j, "plan"), "plan");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw Error(Errc::SizeMismatch, "plan rows differ in length");
  Matrix plan = Matrix::from_rows(rows);
  if (!j.contains("muX") && !j.contains("muY")) return Coupling::from_plan(std::move(plan));
  auto muX = j.contains("muX") ? get_as<std::vector<double>>(j.at("muX"), "muX") : plan.row_sums();
  auto muY = j.contains("muY") ? get_as<std::vector<double>>(j.at("muY"), "muY") : plan.col_sums();
  return Coupling::checked(std::move(plan), std::move(muX), std::move(muY));
}

Json relation_to_json(const Relation& s) {
  Json out = Json::array();
  for (auto [i, j] : s.pairs()) out.push_back({i, j});
  return out;
}

Relation relation_from_json(const Json& j, std::size_t n, std::size_t m) {
  return Relation::from_pairs(n, m, get_as<std::vector<IndexPair>>(j, "relation"));
}

Json permutation_to_json(const Permutation& p) { return Json(p.images()); }

Json action_to_json(const MMAction& action) {
  Json gens = Json::array();
  for (const auto& g : action.elements())
    if (!g.is_identity()) gens.push_back(permutation_to_json(g));
  return Json{{"space", space_to_json(action.space())}, {"generators", gens}};
}

MMAction action_from_json(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw Error(Errc::ParseError, "action must be a JSON object");
  if (!j.contains("space")) return trivial_action(space_from_json(j));
  const Json& sp = j.at("space");
  MMSpace space = sp.is_string() ? space_from_json(read_json_file(base / sp.get<std::string>())) : space_from_json(sp);
  std::vector<Permutation> gens;
  if (j.contains("generators"))
    for (const auto& g : j.at("generators"))
      gens.push_back(Permutation::checked(get_as<std::vector<std::size_t>>(g, "generator"), space.size()));
  return validate_action(space, gens);
}

MMAction load_action(const std::filesystem::path& path) {
  return action_from_json(read_json_file(path), path.parent_path());
}

}  // namespace eqbox
