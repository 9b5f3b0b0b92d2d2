#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vaxalloc/district.hpp"

namespace vaxalloc {

// Annual required child visits per (union council, age category).
// Rows follow the district's union-council order, columns its schedule order.
struct NeedMatrix {
  std::vector<std::string> union_council_ids;
  std::vector<std::string> categories;
  std::vector<std::vector<std::int64_t>> visits;  // [uc][category]
  std::int64_t total_visits = 0;

  std::int64_t at(std::string_view union_council_id, std::string_view category) const;
  std::int64_t row_total(std::size_t uc) const;
  std::int64_t category_total(std::size_t category) const;

  bool operator==(const NeedMatrix&) const = default;
};

// need = population x visits_per_child, exact integer arithmetic.
NeedMatrix compute_need(const District& district);

// One row per union council: id, locality, one column per category, total;
// a final TOTAL row.
std::string need_to_csv(const NeedMatrix& need, const District& district);

}  // namespace vaxalloc
