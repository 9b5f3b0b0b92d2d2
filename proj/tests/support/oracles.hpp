#pragma once

// Independent reference computations for the tests. None of these call the
// code under test except where noted (the allocation oracle reuses solve_lp
// for its flow subproblem; solve_lp itself is checked against vertex
// enumeration).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vaxalloc/allocation.hpp"
#include "vaxalloc/lp.hpp"
#include "vaxalloc/mip.hpp"

namespace oracle {

// Minimum over every simple path of the summed edge minutes; nullopt when
// the nodes are disconnected.
std::optional<double> simple_path_minutes(const vaxalloc::RoadNetwork& network, const std::string& from,
                                          const std::string& to, double metalled_kmh = 30.0,
                                          double unmetalled_kmh = 10.0);

struct LpResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

// Minimum of the objective over all basic feasible solutions. Every bound
// must be finite, which makes the feasible region a polytope.
LpResult vertex_enumeration(const vaxalloc::LinearProgram& lp, double tolerance = 1e-7);

// Every integer assignment of the masked variables, each followed by a
// vertex enumeration over the remaining variables.
LpResult mip_brute_force(const vaxalloc::MipInstance& instance);

struct AllocationResult {
  bool feasible = false;
  double travel_hours = 0.0;
  std::vector<std::int64_t> vaccinators;  // per centre, of the best vector
};

// Minimum travel hours of the flow problem with the vaccinator vector fixed,
// formulated directly in visits; nullopt when that vector is infeasible.
std::optional<double> flow_travel_hours(const vaxalloc::District& district, const vaxalloc::NeedMatrix& need,
                                        const vaxalloc::TravelTimeMatrix& times,
                                        const vaxalloc::PlanningParams& params,
                                        const std::vector<std::int64_t>& vaccinators);

// Enumerates every split of V vaccinators across centres and solves the
// flow problem for each, formulated directly in visits.
AllocationResult allocation_brute_force(const vaxalloc::District& district, const vaxalloc::NeedMatrix& need,
                                        const vaxalloc::TravelTimeMatrix& times,
                                        const vaxalloc::PlanningParams& params);

// Random instances.
vaxalloc::RoadNetwork random_graph(std::mt19937_64& rng, int max_nodes, bool connected);
vaxalloc::LinearProgram random_bounded_lp(std::mt19937_64& rng, int max_vars, int max_rows);
vaxalloc::MipInstance random_mip(std::mt19937_64& rng);

struct SmallInstance {
  vaxalloc::District district;
  vaxalloc::PlanningParams params;
};
// <= 3 centres, <= 4 union councils, V <= 6, every locality has a centre.
SmallInstance random_small_instance(std::mt19937_64& rng);

}  // namespace oracle
