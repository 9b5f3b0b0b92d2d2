#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace vaxalloc {

// Age categories are keyed by name so a dataset can carry its own schedule.
// The default schedule has the two categories below.
inline constexpr std::string_view kInfant = "INFANT";
inline constexpr std::string_view kPreschool = "PRESCHOOL";

struct ScheduleEntry {
  std::string category;
  std::int64_t visits_per_child = 1;

  bool operator==(const ScheduleEntry&) const = default;
};

// Ordered list of categories; the order fixes the column order of every
// per-category table.
using Schedule = std::vector<ScheduleEntry>;

// {INFANT: 5, PRESCHOOL: 1}
Schedule default_schedule();

struct Locality {
  std::string id;
  std::string name;

  bool operator==(const Locality&) const = default;
};

struct UnionCouncil {
  std::string id;
  std::string name;
  std::string locality_id;
  std::string network_node;
  // Child counts keyed by category. Categories absent here count as zero.
  std::vector<std::pair<std::string, std::int64_t>> population;

  std::int64_t population_of(std::string_view category) const;
  bool operator==(const UnionCouncil&) const = default;
};

struct VaccinationCentre {
  std::string id;
  std::string name;
  std::string locality_id;
  std::string network_node;

  bool operator==(const VaccinationCentre&) const = default;
};

enum class Surface { Metalled, Unmetalled };

std::string_view to_string(Surface surface);
std::optional<Surface> surface_from_string(std::string_view text);

struct RoadEdge {
  std::string endpoint_a;
  std::string endpoint_b;
  double length_km = 0.0;
  Surface surface = Surface::Metalled;

  bool operator==(const RoadEdge&) const = default;
};

// Undirected; parallel edges allowed; connectivity is not required here.
struct RoadNetwork {
  std::vector<std::string> nodes;
  std::vector<RoadEdge> edges;

  bool operator==(const RoadNetwork&) const = default;
};

// The planning universe. Treat as immutable once validated; share by const
// reference across threads.
struct District {
  std::string name;
  std::vector<Locality> localities;
  std::vector<UnionCouncil> union_councils;
  std::vector<VaccinationCentre> centres;
  RoadNetwork network;
  Schedule schedule = default_schedule();

  bool operator==(const District&) const = default;

  std::optional<std::size_t> locality_index(std::string_view id) const;
  std::vector<std::size_t> centres_in(std::string_view locality_id) const;
  std::vector<std::size_t> union_councils_in(std::string_view locality_id) const;
};

// Throws ValidationError naming the first offending id.
void validate(const District& district);

// Structural parse against the dataset schema, then domain validation.
// Throws ParseError or ValidationError.
District district_from_json(const nlohmann::ordered_json& doc);
District parse_district(std::string_view text);
District load_district(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const District& district);
void save_district(const District& district, const std::filesystem::path& path);

// Parameters of the synthetic generator. The defaults mimic the size of the
// Dera Ismail Khan health district: 3 localities, 25 union councils and 16
// vaccination centres.
struct SyntheticShape {
  int n_localities = 3;
  int n_union_councils = 25;
  int n_centres = 16;
  std::int64_t infant_min = 650;
  std::int64_t infant_max = 950;
  std::int64_t preschool_min = 320;
  std::int64_t preschool_max = 480;
};

// Pure function of (seed, shape); the road network is always connected.
District generate_synthetic(std::uint64_t seed, const SyntheticShape& shape = {});

}  // namespace vaxalloc
