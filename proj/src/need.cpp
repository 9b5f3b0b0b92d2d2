#include "vaxalloc/need.hpp"

#include <numeric>
#include <sstream>

#include "vaxalloc/errors.hpp"

namespace vaxalloc {

std::int64_t NeedMatrix::at(std::string_view union_council_id, std::string_view category) const {
  for (std::size_t u = 0; u < union_council_ids.size(); ++u) {
    if (union_council_ids[u] != union_council_id) continue;
    for (std::size_t a = 0; a < categories.size(); ++a) {
      if (categories[a] == category) return visits[u][a];
    }
  }
  throw DomainError("no need entry for (" + std::string(union_council_id) + ", " + std::string(category) + ")");
}

std::int64_t NeedMatrix::row_total(std::size_t uc) const {
  return std::accumulate(visits.at(uc).begin(), visits.at(uc).end(), std::int64_t{0});
}

std::int64_t NeedMatrix::category_total(std::size_t category) const {
  std::int64_t sum = 0;
  for (const auto& row : visits) sum += row.at(category);
  return sum;
}

NeedMatrix compute_need(const District& district) {
  NeedMatrix need;
  for (const auto& entry : district.schedule) need.categories.push_back(entry.category);
  for (const auto& uc : district.union_councils) {
    need.union_council_ids.push_back(uc.id);
    std::vector<std::int64_t> row;
    for (const auto& entry : district.schedule) {
      const std::int64_t visits = uc.population_of(entry.category) * entry.visits_per_child;
      row.push_back(visits);
      need.total_visits += visits;
    }
    need.visits.push_back(std::move(row));
  }
  return need;
}

std::string need_to_csv(const NeedMatrix& need, const District& district) {
  std::ostringstream out;
  out << "union_council,locality";
  for (const auto& c : need.categories) out << ',' << c;
  out << ",total\n";
  for (std::size_t u = 0; u < need.union_council_ids.size(); ++u) {
    out << need.union_council_ids[u] << ',' << district.union_councils.at(u).locality_id;
    for (auto v : need.visits[u]) out << ',' << v;
    out << ',' << need.row_total(u) << '\n';
  }
  out << "TOTAL,";
  for (std::size_t a = 0; a < need.categories.size(); ++a) out << ',' << need.category_total(a);
  out << ',' << need.total_visits << '\n';
  return out.str();
}

}  // namespace vaxalloc
