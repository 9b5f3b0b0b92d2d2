#pragma once

#include <string>

#include "vaxalloc/allocation.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(VAXALLOC_DATA_DIR) + "/" + name; }

inline const vaxalloc::District& dik() {
  static const vaxalloc::District d = vaxalloc::load_district(path("dik_fixture.json"));
  return d;
}

inline const vaxalloc::District& threshold() {
  static const vaxalloc::District d = vaxalloc::load_district(path("threshold_fixture.json"));
  return d;
}

// Vaccinator count the threshold fixture is built around.
inline constexpr std::int64_t kThresholdVaccinators = 13;

}  // namespace fixtures
