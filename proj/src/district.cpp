#include "vaxalloc/district.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vaxalloc/errors.hpp"
#include "vaxalloc/json_schema.hpp"

namespace vaxalloc {

using Json = nlohmann::ordered_json;

Schedule default_schedule() {
  return {{std::string(kInfant), 5}, {std::string(kPreschool), 1}};
}

std::int64_t UnionCouncil::population_of(std::string_view category) const {
  for (const auto& [name, count] : population) {
    if (name == category) return count;
  }
  return 0;
}

std::string_view to_string(Surface surface) {
  return surface == Surface::Metalled ? "METALLED" : "UNMETALLED";
}

std::optional<Surface> surface_from_string(std::string_view text) {
  if (text == "METALLED") return Surface::Metalled;
  if (text == "UNMETALLED") return Surface::Unmetalled;
  return std::nullopt;
}

std::optional<std::size_t> District::locality_index(std::string_view id) const {
  for (std::size_t i = 0; i < localities.size(); ++i) {
    if (localities[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> District::centres_in(std::string_view locality_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < centres.size(); ++i) {
    if (centres[i].locality_id == locality_id) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> District::union_councils_in(std::string_view locality_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < union_councils.size(); ++i) {
    if (union_councils[i].locality_id == locality_id) out.push_back(i);
  }
  return out;
}

namespace {

template <typename Range, typename IdOf>
std::unordered_set<std::string> unique_ids(const Range& items, IdOf id_of, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& item : items) {
    const std::string& id = id_of(item);
    if (id.empty()) throw ValidationError(id, std::string("empty ") + what + " id");
    if (!seen.insert(id).second) {
      throw ValidationError(id, std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
  return seen;
}

}  // namespace

void validate(const District& d) {
  const auto locality_ids = unique_ids(d.localities, [](const Locality& l) -> const std::string& { return l.id; }, "locality");
  const auto node_ids = unique_ids(d.network.nodes, [](const std::string& n) -> const std::string& { return n; }, "network node");
  unique_ids(d.union_councils, [](const UnionCouncil& u) -> const std::string& { return u.id; }, "union council");
  unique_ids(d.centres, [](const VaccinationCentre& c) -> const std::string& { return c.id; }, "centre");

  if (d.union_councils.empty()) throw ValidationError("", "district has no union councils");
  if (d.centres.empty()) throw ValidationError("", "district has no vaccination centres");

  if (d.schedule.empty()) throw ValidationError("", "visit schedule is empty");
  std::unordered_set<std::string> categories;
  for (const auto& entry : d.schedule) {
    if (entry.category.empty()) throw ValidationError("", "schedule has an unnamed category");
    if (!categories.insert(entry.category).second) {
      throw ValidationError(entry.category, "duplicate schedule category '" + entry.category + "'");
    }
    if (entry.visits_per_child < 1) {
      throw ValidationError(entry.category, "visits per child for '" + entry.category + "' must be >= 1");
    }
  }

  for (const auto& uc : d.union_councils) {
    if (!locality_ids.contains(uc.locality_id)) {
      throw ValidationError(uc.locality_id, "union council '" + uc.id + "' references unknown locality '" + uc.locality_id + "'");
    }
    if (!node_ids.contains(uc.network_node)) {
      throw ValidationError(uc.network_node, "union council '" + uc.id + "' references unknown network node '" + uc.network_node + "'");
    }
    std::unordered_set<std::string> seen;
    for (const auto& [category, count] : uc.population) {
      if (!categories.contains(category)) {
        throw ValidationError(uc.id, "union council '" + uc.id + "' has population for unscheduled category '" + category + "'");
      }
      if (!seen.insert(category).second) {
        throw ValidationError(uc.id, "union council '" + uc.id + "' lists category '" + category + "' twice");
      }
      if (count < 0) {
        throw ValidationError(uc.id, "union council '" + uc.id + "' has a negative population");
      }
    }
  }
  for (const auto& c : d.centres) {
    if (!locality_ids.contains(c.locality_id)) {
      throw ValidationError(c.locality_id, "centre '" + c.id + "' references unknown locality '" + c.locality_id + "'");
    }
    if (!node_ids.contains(c.network_node)) {
      throw ValidationError(c.network_node, "centre '" + c.id + "' references unknown network node '" + c.network_node + "'");
    }
  }
  for (std::size_t i = 0; i < d.network.edges.size(); ++i) {
    const auto& e = d.network.edges[i];
    const std::string edge_id = "edge[" + std::to_string(i) + "]";
    if (!node_ids.contains(e.endpoint_a) || !node_ids.contains(e.endpoint_b)) {
      throw ValidationError(edge_id, edge_id + " (" + e.endpoint_a + " - " + e.endpoint_b + ") has an unknown endpoint");
    }
    if (!(e.length_km > 0.0) || !std::isfinite(e.length_km)) {
      throw ValidationError(edge_id, edge_id + " (" + e.endpoint_a + " - " + e.endpoint_b + ") must have a positive finite length");
    }
  }
}

District district_from_json(const Json& doc) {
  const auto violations = validate_against_schema(district_schema(), doc);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "dataset does not match the schema:";
    for (const auto& v : violations) msg << "\n  " << (v.path.empty() ? "/" : v.path) << ": " << v.message;
    throw ParseError(msg.str());
  }

  District d;
  d.name = doc.value("name", "");
  for (const auto& l : doc["localities"]) {
    d.localities.push_back({l["id"].get<std::string>(), l["name"].get<std::string>()});
  }
  for (const auto& u : doc["union_councils"]) {
    UnionCouncil uc{u["id"].get<std::string>(), u["name"].get<std::string>(),
                    u["locality_id"].get<std::string>(), u["network_node"].get<std::string>(), {}};
    for (const auto& [category, count] : u["population"].items()) {
      uc.population.emplace_back(category, count.get<std::int64_t>());
    }
    d.union_councils.push_back(std::move(uc));
  }
  for (const auto& c : doc["centres"]) {
    d.centres.push_back({c["id"].get<std::string>(), c["name"].get<std::string>(),
                         c["locality_id"].get<std::string>(), c["network_node"].get<std::string>()});
  }
  for (const auto& n : doc["network"]["nodes"]) d.network.nodes.push_back(n.get<std::string>());
  for (const auto& e : doc["network"]["edges"]) {
    d.network.edges.push_back({e["endpoint_a"].get<std::string>(), e["endpoint_b"].get<std::string>(),
                               e["length_km"].get<double>(),
                               *surface_from_string(e["surface"].get<std::string>())});
  }
  d.schedule.clear();
  for (const auto& [category, visits] : doc["schedule"].items()) {
    d.schedule.push_back({category, visits.get<std::int64_t>()});
  }

  validate(d);
  return d;
}

District parse_district(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed dataset: ") + e.what());
  }
  return district_from_json(doc);
}

District load_district(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_district(buffer.str());
}

Json to_json(const District& d) {
  Json doc = Json::object();
  if (!d.name.empty()) doc["name"] = d.name;
  doc["localities"] = Json::array();
  for (const auto& l : d.localities) doc["localities"].push_back({{"id", l.id}, {"name", l.name}});
  doc["union_councils"] = Json::array();
  for (const auto& u : d.union_councils) {
    Json population = Json::object();
    for (const auto& [category, count] : u.population) population[category] = count;
    doc["union_councils"].push_back({{"id", u.id},
                                     {"name", u.name},
                                     {"locality_id", u.locality_id},
                                     {"network_node", u.network_node},
                                     {"population", population}});
  }
  doc["centres"] = Json::array();
  for (const auto& c : d.centres) {
    doc["centres"].push_back(
        {{"id", c.id}, {"name", c.name}, {"locality_id", c.locality_id}, {"network_node", c.network_node}});
  }
  Json edges = Json::array();
  for (const auto& e : d.network.edges) {
    edges.push_back({{"endpoint_a", e.endpoint_a},
                     {"endpoint_b", e.endpoint_b},
                     {"length_km", e.length_km},
                     {"surface", std::string(to_string(e.surface))}});
  }
  doc["network"] = {{"nodes", d.network.nodes}, {"edges", edges}};
  Json schedule = Json::object();
  for (const auto& s : d.schedule) schedule[s.category] = s.visits_per_child;
  doc["schedule"] = schedule;
  return doc;
}

void save_district(const District& district, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write dataset '" + path.string() + "'");
  out << to_json(district).dump(2) << '\n';
}

}  // namespace vaxalloc
