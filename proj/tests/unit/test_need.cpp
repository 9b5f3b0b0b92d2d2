#include <doctest.h>

#include "fixtures.hpp"
#include "vaxalloc/need.hpp"

using namespace vaxalloc;

namespace {

District one_uc(std::int64_t infants, std::int64_t preschool) {
  District d;
  d.localities = {{"L", ""}};
  d.network.nodes = {"n"};
  d.union_councils = {{"U", "", "L", "n", {{"INFANT", infants}, {"PRESCHOOL", preschool}}}};
  d.centres = {{"C", "", "L", "n"}};
  return d;
}

}  // namespace

TEST_SUITE("need") {
  TEST_CASE("default schedule multiplies infants by five") {
    const NeedMatrix n = compute_need(one_uc(100, 200));
    CHECK(n.at("U", "INFANT") == 500);
    CHECK(n.at("U", "PRESCHOOL") == 200);
    CHECK(n.total_visits == 700);
  }

  TEST_CASE("zero populations give zero need") {
    const NeedMatrix n = compute_need(one_uc(0, 0));
    CHECK(n.at("U", "INFANT") == 0);
    CHECK(n.at("U", "PRESCHOOL") == 0);
    CHECK(n.total_visits == 0);
  }

  TEST_CASE("total equals an independent sum") {
    SyntheticShape shape;
    shape.n_union_councils = 3;
    shape.n_centres = 3;
    const District d = generate_synthetic(11, shape);
    const NeedMatrix n = compute_need(d);
    std::int64_t sum = 0;
    std::size_t entries = 0;
    for (const auto& uc : d.union_councils) {
      for (const auto& s : d.schedule) {
        sum += uc.population_of(s.category) * s.visits_per_child;
        ++entries;
      }
    }
    CHECK(entries == 6);
    CHECK(n.total_visits == sum);
  }

  TEST_CASE("need is linear in population") {
    const NeedMatrix a = compute_need(one_uc(37, 11));
    const NeedMatrix b = compute_need(one_uc(74, 22));
    CHECK(b.total_visits == 2 * a.total_visits);
  }

  TEST_CASE("custom schedule changes the multiplier") {
    District d = one_uc(10, 10);
    d.schedule = {{"INFANT", 3}, {"PRESCHOOL", 2}};
    const NeedMatrix n = compute_need(d);
    CHECK(n.at("U", "INFANT") == 30);
    CHECK(n.at("U", "PRESCHOOL") == 20);
  }

  TEST_CASE("row and category totals") {
    const NeedMatrix n = compute_need(fixtures::dik());
    std::int64_t rows = 0;
    for (std::size_t u = 0; u < n.visits.size(); ++u) rows += n.row_total(u);
    CHECK(rows == n.total_visits);
    CHECK(n.category_total(0) + n.category_total(1) == n.total_visits);
    CHECK(n.total_visits == 109960);
  }

  TEST_CASE("csv has a row per union council and a total row") {
    const District d = one_uc(1, 2);
    const std::string csv = need_to_csv(compute_need(d), d);
    CHECK(csv.find("U,L,5,2,7") != std::string::npos);
    CHECK(csv.find("TOTAL") != std::string::npos);
  }
}
