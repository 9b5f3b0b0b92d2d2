#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vaxalloc/errors.hpp"

using namespace vaxalloc;

namespace {

// Locality i holds centre Ci and union council Ui, joined by km[i] of metalled road.
District chain(const std::vector<double>& km, std::int64_t children) {
  District d;
  d.schedule = {{"CHILD", 1}};
  for (std::size_t i = 0; i < km.size(); ++i) {
    const std::string s = std::to_string(i);
    d.localities.push_back({"L" + s, ""});
    d.network.nodes.push_back("c" + s);
    d.network.nodes.push_back("u" + s);
    d.network.edges.push_back({"c" + s, "u" + s, km[i], Surface::Metalled});
    if (i > 0) d.network.edges.push_back({"u" + std::to_string(i - 1), "u" + s, 40.0, Surface::Unmetalled});
    d.union_councils.push_back({"U" + s, "", "L" + s, "u" + s, {{"CHILD", children}}});
    d.centres.push_back({"C" + s, "", "L" + s, "c" + s});
  }
  return d;
}

struct Solved {
  District district;
  NeedMatrix need;
  TravelTimeMatrix times;
  explicit Solved(District d) : district(std::move(d)), need(compute_need(district)), times(build_matrix(district)) {}
  AllocationOutcome solve(const PlanningParams& p) const { return solve_allocation(district, need, times, p); }
};

PlanningParams threshold_params(bool model2 = false) {
  PlanningParams p;
  p.total_vaccinators = fixtures::kThresholdVaccinators;
  p.cross_boundary = model2;
  return p;
}

void check_plan_invariants(const Solved& s, const AllocationOutcome& out) {
  REQUIRE(out.status == PlanStatus::Optimal);
  REQUIRE(out.plan);
  const AllocationPlan& plan = *out.plan;
  const PlanningParams& p = out.params;
  const double K = static_cast<double>(p.capacity_per_vaccinator());

  std::int64_t total = 0;
  std::map<std::string, std::int64_t> by_centre;
  for (const auto& [id, n] : plan.vaccinators_by_centre) {
    CHECK(n >= 0);
    total += n;
    by_centre[id] = n;
  }
  CHECK(total == p.total_vaccinators);
  std::int64_t locality_total = 0;
  for (const auto& [id, n] : plan.vaccinators_by_locality) locality_total += n;
  CHECK(locality_total == p.total_vaccinators);

  std::map<std::string, double> delivered_by_centre;
  std::map<std::pair<std::string, std::string>, double> delivered;
  double hours = 0.0;
  for (const auto& f : plan.flows) {
    CHECK(f.visits >= 0.0);
    delivered_by_centre[f.centre_id] += f.visits;
    delivered[{f.union_council_id, f.category}] += f.visits;
    hours += f.visits / static_cast<double>(p.children_per_day) * p.round_trip_factor *
             s.times.at(f.centre_id, f.union_council_id) / 60.0;
  }
  for (const auto& [id, n] : by_centre) {
    CHECK(delivered_by_centre[id] == doctest::Approx(static_cast<double>(n) * K).epsilon(1e-7));
  }
  for (const auto& c : plan.coverage) {
    CHECK(c.visits == doctest::Approx(delivered[{c.union_council_id, c.category}]).epsilon(1e-9));
    CHECK(c.alpha == doctest::Approx(c.visits / static_cast<double>(c.need)));
    CHECK(c.alpha <= 1.0 + 1e-9);
    CHECK(c.alpha >= plan.alpha_min - 1e-12);
    CHECK(c.alpha <= plan.alpha_max + 1e-12);
  }
  CHECK(plan.total_travel_hours == doctest::Approx(hours).epsilon(1e-9));
  if (p.uses_exact_equity()) {
    CHECK(plan.alpha_max - plan.alpha_min <= 1e-6);
  } else {
    CHECK(plan.alpha_max - plan.alpha_min <= p.equity_deviation + 1e-6);
  }
}

}  // namespace

TEST_SUITE("allocation") {
  TEST_CASE("params validation") {
    PlanningParams p;
    p.total_vaccinators = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.equity_deviation = -0.1;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.round_trip_factor = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    CHECK(PlanningParams{}.capacity_per_vaccinator() == 1365);
  }

  TEST_CASE("dimensions of the fixture program") {
    const Solved s(fixtures::dik());
    PlanningParams p;
    p.cross_boundary = true;
    const AllocationProgram prog = build_program(s.need, s.times, s.district, p);
    const ProgramLayout& l = prog.layout;
    CHECK(l.vaccinator_columns.size() == 16);
    CHECK(l.flows.size() == 800);
    CHECK(l.pairs.size() == 50);
    CHECK(l.exact);
    CHECK(l.alpha_lo_column == l.alpha_hi_column);
    CHECK(prog.mip.base.num_variables() == 16 + 800 + 1);
    std::size_t integers = 0;
    for (bool b : prog.mip.integer_mask) integers += b ? 1 : 0;
    CHECK(integers == 16);
    CHECK(l.visits_per_flow_unit == 1365.0);

    p.exact_equity = false;
    CHECK(build_program(s.need, s.times, s.district, p).mip.base.num_variables() == 16 + 800 + 2);
  }

  TEST_CASE("locality-bound program only has in-locality flows") {
    const Solved s(fixtures::dik());
    const AllocationProgram prog = build_program(s.need, s.times, s.district, PlanningParams{});
    std::size_t expected = 0;
    for (const auto& uc : s.district.union_councils) expected += 2 * s.district.centres_in(uc.locality_id).size();
    CHECK(prog.layout.flows.size() == expected);
  }

  TEST_CASE("no admissible centre is a build error") {
    District d = chain({5.0, 5.0}, 100);
    d.centres[0].locality_id = "L1";
    const Solved s(d);
    CHECK_THROWS_AS(build_program(s.need, s.times, s.district, PlanningParams{}), BuildError);
  }

  TEST_CASE("hand-computed single centre") {
    // 30 km metalled = 60 min one way, 2 h round trip; 1365 visits in 273 trips
    const Solved s(chain({30.0}, 2730));
    PlanningParams p;
    p.total_vaccinators = 1;
    p.exact_equity = true;
    const auto out = s.solve(p);
    check_plan_invariants(s, out);
    CHECK(out.plan->alpha_max == doctest::Approx(0.5));
    CHECK(out.plan->total_travel_hours == doctest::Approx(546.0));
  }

  TEST_CASE("identical localities share vaccinators evenly") {
    const Solved s(chain({10.0, 10.0}, 2730));
    PlanningParams p;
    p.total_vaccinators = 2;
    const auto out = s.solve(p);
    check_plan_invariants(s, out);
    CHECK(out.plan->vaccinators_by_locality[0].second == 1);
    CHECK(out.plan->vaccinators_by_locality[1].second == 1);
    CHECK(out.plan->coverage[0].alpha == doctest::Approx(out.plan->coverage[1].alpha));
  }

  TEST_CASE("exact equity gives the capacity ratio everywhere") {
    const Solved s(fixtures::dik());
    PlanningParams p;
    p.cross_boundary = true;
    const auto out = s.solve(p);
    check_plan_invariants(s, out);
    const double ratio = 46.0 * 1365.0 / static_cast<double>(s.need.total_visits);
    for (const auto& c : out.plan->coverage) CHECK(std::abs(c.alpha - ratio) <= 1e-6);
  }

  TEST_CASE("locality-bound plan on the fixture") {
    const Solved s(fixtures::dik());
    const auto out = s.solve(PlanningParams{});
    check_plan_invariants(s, out);
    std::map<std::string, std::string> locality;
    for (const auto& c : s.district.centres) locality[c.id] = c.locality_id;
    for (const auto& u : s.district.union_councils) locality[u.id] = u.locality_id;
    for (const auto& f : out.plan->flows) CHECK(locality[f.centre_id] == locality[f.union_council_id]);
  }

  TEST_CASE("capacity beyond need is reported without solving") {
    const Solved s(chain({5.0}, 2000));
    PlanningParams p;
    p.total_vaccinators = 2;
    const auto out = s.solve(p);
    CHECK(out.status == PlanStatus::Infeasible);
    CHECK(out.nodes_explored == 0);
    CHECK(out.diagnostic.find("at most 1 vaccinators") != std::string::npos);
  }

  TEST_CASE("random small instances match exhaustive enumeration") {
    std::mt19937_64 rng(2024);
    int optimal = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const auto inst = oracle::random_small_instance(rng);
      const Solved s(inst.district);
      const auto expected = oracle::allocation_brute_force(s.district, s.need, s.times, inst.params);
      INFO("trial " << trial);
      AllocationOutcome out;
      try {
        out = s.solve(inst.params);
      } catch (const BuildError&) {
        CHECK_FALSE(expected.feasible);
        continue;
      }
      REQUIRE(out.status == (expected.feasible ? PlanStatus::Optimal : PlanStatus::Infeasible));
      if (!expected.feasible) continue;
      ++optimal;
      check_plan_invariants(s, out);
      CHECK(std::abs(out.plan->total_travel_hours - expected.travel_hours) <= 1e-6 * std::max(1.0, expected.travel_hours));
    }
    CHECK(optimal >= 15);
  }

  TEST_CASE("threshold fixture switches from infeasible to feasible") {
    const Solved s(fixtures::threshold());
    PlanningParams p = threshold_params();
    for (double eps : {0.0, 0.05, 0.07}) {
      p.equity_deviation = eps;
      CHECK(s.solve(p).status == PlanStatus::Infeasible);
    }
    for (double eps : {0.075, 0.10}) {
      p.equity_deviation = eps;
      const auto out = s.solve(p);
      check_plan_invariants(s, out);
    }
    const auto pooled = s.solve(threshold_params(true));
    check_plan_invariants(s, pooled);
  }

  TEST_CASE("infeasibility threshold over a grid") {
    const Solved t(fixtures::threshold());
    const PlanningParams p = threshold_params();
    CHECK(infeasibility_threshold(t.district, t.need, t.times, p, {0.0, 0.05, 0.10}) == 0.10);
    CHECK_FALSE(infeasibility_threshold(t.district, t.need, t.times, p, {0.0, 0.05}).has_value());
    CHECK_THROWS_AS(infeasibility_threshold(t.district, t.need, t.times, p, {0.10, 0.05}), DomainError);

    const Solved single(chain({30.0}, 2730));
    PlanningParams q;
    q.total_vaccinators = 1;
    CHECK(infeasibility_threshold(single.district, single.need, single.times, q, {0.0, 0.05}) == 0.0);
  }
}
