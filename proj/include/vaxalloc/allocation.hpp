#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vaxalloc/district.hpp"
#include "vaxalloc/mip.hpp"
#include "vaxalloc/need.hpp"
#include "vaxalloc/traveltime.hpp"

namespace vaxalloc {

struct PlanningParams {
  std::int64_t children_per_day = 5;
  std::int64_t working_days = 273;
  std::int64_t total_vaccinators = 46;
  double equity_deviation = 0.03;  // allowed spread alpha_max - alpha_min
  double round_trip_factor = 2.0;  // applied to one-way matrix times
  bool cross_boundary = false;     // false: Model 1, true: Model 2
  // Unset: exact equity for Model 2, banded for Model 1.
  std::optional<bool> exact_equity;

  bool uses_exact_equity() const { return exact_equity.value_or(cross_boundary); }
  int model_number() const { return cross_boundary ? 2 : 1; }
  // Annual visits one vaccinator delivers.
  std::int64_t capacity_per_vaccinator() const { return children_per_day * working_days; }

  // Throws DomainError naming the violated invariant.
  void validate() const;
};

// How a built program maps back to the planning entities.
struct ProgramLayout {
  struct Flow {
    std::size_t centre;
    std::size_t union_council;
    std::size_t category;
    std::size_t column;
  };
  struct CoveragePair {
    std::size_t union_council;
    std::size_t category;
    std::int64_t need;
  };

  std::vector<std::size_t> vaccinator_columns;  // one per centre
  std::vector<Flow> flows;
  std::vector<CoveragePair> pairs;  // (uc, category) with positive need
  // Banded mode: alpha_lo and alpha_hi; exact mode: alpha_lo == alpha_hi.
  std::size_t alpha_lo_column = 0;
  std::size_t alpha_hi_column = 0;
  bool exact = false;
  // Flow columns are in vaccinator-years; multiply by this for visits.
  double visits_per_flow_unit = 0.0;
};

struct AllocationProgram {
  MipInstance mip;
  ProgramLayout layout;
};

// Builds the Model 1 / Model 2 mixed-integer program:
//   v_c integer vaccinators per centre, sum v_c = V
//   x_{c,u,a} >= 0 flow (vaccinator-years) for admissible (c, u) pairs only
//   coverage rows: sum_c x_{c,u,a} = alpha_{u,a} * N_{u,a} / K with alpha
//   substituted by the band variables (alpha_lo <= alpha_{u,a} <= alpha_hi,
//   alpha_hi - alpha_lo <= epsilon) or the single exact alpha
//   full utilisation: sum_{u,a} x_{c,u,a} = v_c
//   minimise sum x * K / children_per_day * round_trip * t / 60 (hours/year)
// Throws BuildError when some (u, a) with positive need has no admissible
// centre, MissingEntry when a travel time is absent.
AllocationProgram build_program(const NeedMatrix& need, const TravelTimeMatrix& times,
                                const District& district, const PlanningParams& params);

enum class PlanStatus { Optimal, Infeasible };

std::string to_string(PlanStatus status);

struct CentreFlow {
  std::string centre_id;
  std::string union_council_id;
  std::string category;
  double visits = 0.0;
};

struct Coverage {
  std::string union_council_id;
  std::string category;
  std::int64_t need = 0;
  double visits = 0.0;
  double alpha = 0.0;
};

struct AllocationPlan {
  std::vector<std::pair<std::string, std::int64_t>> vaccinators_by_centre;
  std::vector<std::pair<std::string, std::int64_t>> vaccinators_by_locality;
  std::vector<CentreFlow> flows;     // positive flows only
  std::vector<Coverage> coverage;    // one per (uc, category) with positive need
  double alpha_max = 0.0;
  double alpha_min = 0.0;
  double total_travel_hours = 0.0;   // per year
};

struct AllocationOutcome {
  PlanStatus status = PlanStatus::Infeasible;
  PlanningParams params;
  std::optional<AllocationPlan> plan;  // set when Optimal
  std::string diagnostic;              // set when Infeasible
  std::size_t nodes_explored = 0;
  bool limit_reached = false;
};

AllocationPlan extract_plan(const AllocationProgram& program, const MipSolution& solution,
                            const NeedMatrix& need, const TravelTimeMatrix& times,
                            const District& district, const PlanningParams& params);

AllocationOutcome solve_allocation(const District& district, const NeedMatrix& need,
                                   const TravelTimeMatrix& times, const PlanningParams& params,
                                   const MipOptions& options = {});

// First epsilon of the ascending grid whose banded solve is feasible.
std::optional<double> infeasibility_threshold(const District& district, const NeedMatrix& need,
                                              const TravelTimeMatrix& times, PlanningParams params,
                                              const std::vector<double>& epsilon_grid);

}  // namespace vaxalloc
