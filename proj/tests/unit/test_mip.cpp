#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vaxalloc/errors.hpp"
#include "vaxalloc/mip.hpp"

using namespace vaxalloc;

TEST_SUITE("mip") {
  TEST_CASE("floor of the relaxation") {
    MipInstance m;
    m.base.add_variable("x", -1.0);
    m.base.add_constraint({1.0}, Relation::LessEqual, 2.5);
    m.integer_mask = {true};
    const auto s = solve_mip(m);
    REQUIRE(s.status == MipStatus::Optimal);
    CHECK(s.values[0] == 2.0);
    CHECK(s.objective_value == doctest::Approx(-2.0));
  }

  TEST_CASE("integral relaxation is solved at the root") {
    MipInstance m;
    m.base.add_variable("x", -1.0);
    m.base.add_variable("y", -1.0);
    m.base.add_constraint({1.0, 1.0}, Relation::LessEqual, 3.0);
    m.integer_mask = {true, true};
    const auto s = solve_mip(m);
    REQUIRE(s.status == MipStatus::Optimal);
    CHECK(s.nodes_explored == 1);
    CHECK(s.objective_value == doctest::Approx(-3.0));
  }

  TEST_CASE("integer infeasible") {
    MipInstance m;
    m.base.add_variable("x", 1.0);
    m.base.add_constraint({2.0}, Relation::Equal, 1.0);
    m.integer_mask = {true};
    CHECK(solve_mip(m).status == MipStatus::Infeasible);
  }

  TEST_CASE("mask width is checked") {
    MipInstance m;
    m.base.add_variable("x", 1.0);
    m.integer_mask = {true, false};
    CHECK_THROWS_AS(m.validate(), DimensionMismatch);
  }

  TEST_CASE("random instances match brute force") {
    std::mt19937_64 rng(99);
    int feasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const MipInstance m = oracle::random_mip(rng);
      const auto expected = oracle::mip_brute_force(m);
      const auto got = solve_mip(m);
      INFO("trial " << trial);
      CHECK_FALSE(got.limit_reached);
      if (!expected.feasible) {
        CHECK(got.status == MipStatus::Infeasible);
        continue;
      }
      ++feasible;
      REQUIRE(got.status == MipStatus::Optimal);
      CHECK(std::abs(got.objective_value - expected.objective) <= 1e-6);
      for (std::size_t j = 0; j < m.integer_mask.size(); ++j) {
        if (m.integer_mask[j]) CHECK(got.values[j] == std::round(got.values[j]));
      }
      CHECK(max_violation(m.base, got.values) <= 1e-6);
    }
    CHECK(feasible > 40);
  }

  TEST_CASE("clearing the mask gives the relaxation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      MipInstance m = oracle::random_mip(rng);
      const auto relaxed = solve_lp(m.base);
      m.integer_mask.assign(m.integer_mask.size(), false);
      const auto s = solve_mip(m);
      if (relaxed.status != LpStatus::Optimal) {
        CHECK(s.status == MipStatus::Infeasible);
        continue;
      }
      REQUIRE(s.status == MipStatus::Optimal);
      CHECK(s.nodes_explored == 1);
      CHECK(s.objective_value == doctest::Approx(relaxed.objective_value));
    }
  }

  TEST_CASE("solves are deterministic") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
      const MipInstance m = oracle::random_mip(rng);
      const auto a = solve_mip(m);
      const auto b = solve_mip(m);
      CHECK(a.values == b.values);
      CHECK(a.nodes_explored == b.nodes_explored);
    }
  }

  TEST_CASE("node limit stops the search") {
    MipInstance m;
    for (int j = 0; j < 6; ++j) m.base.add_variable("x", -1.0 - 0.1 * j, 0.0, 6.0);
    m.base.add_constraint(std::vector<double>(6, 2.0), Relation::LessEqual, 13.0);
    m.integer_mask.assign(6, true);
    MipOptions o;
    o.node_limit = 1;
    CHECK(solve_mip(m, o).limit_reached);
    CHECK_FALSE(solve_mip(m).limit_reached);
  }
}
