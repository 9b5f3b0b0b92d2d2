#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vaxalloc/district.hpp"

namespace vaxalloc {

// Average motorcycle speeds by road surface.
struct SpeedModel {
  double metalled_kmh = 30.0;
  double unmetalled_kmh = 10.0;

  double speed(Surface surface) const {
    return surface == Surface::Metalled ? metalled_kmh : unmetalled_kmh;
  }
  void validate() const;  // throws DomainError unless both speeds are > 0
};

// One-way minutes, rows = centres, columns = union councils, both in district
// order. Always complete.
struct TravelTimeMatrix {
  std::vector<std::string> centre_ids;
  std::vector<std::string> union_council_ids;
  std::vector<double> minutes;  // row-major

  double at(std::size_t centre, std::size_t uc) const {
    return minutes[centre * union_council_ids.size() + uc];
  }
  double at(std::string_view centre_id, std::string_view union_council_id) const;

  bool operator==(const TravelTimeMatrix&) const = default;
};

// length / speed(surface) * 60.
double edge_time(double length_km, Surface surface, const SpeedModel& speeds);

// Shortest travel time between two nodes (Dijkstra). Throws Unreachable when
// no path exists and DomainError for unknown nodes.
double shortest_time(const RoadNetwork& network, std::string_view from, std::string_view to,
                     const SpeedModel& speeds);

// Shortest times from one node to every node, indexed like network.nodes;
// unreachable nodes get +infinity.
std::vector<double> shortest_times_from(const RoadNetwork& network, std::string_view from,
                                        const SpeedModel& speeds);

// Centre rows are computed independently; `workers` = 0 picks the hardware
// concurrency. The result does not depend on the worker count. Throws
// Unreachable for the first disconnected (centre, union council) pair.
TravelTimeMatrix build_matrix(const District& district, const SpeedModel& speeds = {},
                              unsigned workers = 0);

// Rows = centres, columns = union councils, minutes with two decimals.
std::string matrix_to_csv(const TravelTimeMatrix& matrix);

}  // namespace vaxalloc
