#include "vaxalloc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vaxalloc/errors.hpp"

namespace vaxalloc {

void PlanningParams::validate() const {
  if (children_per_day < 1) throw DomainError("children_per_day must be >= 1");
  if (working_days < 1) throw DomainError("working_days must be >= 1");
  if (total_vaccinators < 1) throw DomainError("total_vaccinators must be >= 1");
  if (!(equity_deviation >= 0.0) || !std::isfinite(equity_deviation)) {
    throw DomainError("equity_deviation must be >= 0");
  }
  if (!(round_trip_factor > 0.0) || !std::isfinite(round_trip_factor)) {
    throw DomainError("round_trip_factor must be > 0");
  }
}

std::string to_string(PlanStatus status) {
  return status == PlanStatus::Optimal ? "OPTIMAL" : "INFEASIBLE";
}

namespace {

void check_inputs(const NeedMatrix& need, const TravelTimeMatrix& times, const District& district) {
  if (need.union_council_ids.size() != district.union_councils.size() ||
      need.categories.size() != district.schedule.size()) {
    throw DimensionMismatch("need matrix does not cover the district");
  }
  for (std::size_t u = 0; u < district.union_councils.size(); ++u) {
    if (need.union_council_ids[u] != district.union_councils[u].id) {
      throw DimensionMismatch("need matrix row " + std::to_string(u) + " is not union council '" +
                              district.union_councils[u].id + "'");
    }
  }
  for (std::size_t c = 0; c < district.centres.size(); ++c) {
    if (c >= times.centre_ids.size() || times.centre_ids[c] != district.centres[c].id) {
      throw MissingEntry("travel-time matrix has no row for centre '" + district.centres[c].id + "'");
    }
  }
  for (std::size_t u = 0; u < district.union_councils.size(); ++u) {
    if (u >= times.union_council_ids.size() || times.union_council_ids[u] != district.union_councils[u].id) {
      throw MissingEntry("travel-time matrix has no column for union council '" + district.union_councils[u].id + "'");
    }
  }
  if (times.minutes.size() != times.centre_ids.size() * times.union_council_ids.size()) {
    throw DimensionMismatch("travel-time matrix is ragged");
  }
}

}  // namespace

AllocationProgram build_program(const NeedMatrix& need, const TravelTimeMatrix& times,
                                const District& district, const PlanningParams& params) {
  params.validate();
  check_inputs(need, times, district);

  AllocationProgram out;
  LinearProgram& lp = out.mip.base;
  ProgramLayout& layout = out.layout;
  layout.exact = params.uses_exact_equity();
  const double capacity = static_cast<double>(params.capacity_per_vaccinator());
  layout.visits_per_flow_unit = capacity;
  const double hours_per_unit_minute =
      capacity / static_cast<double>(params.children_per_day) * params.round_trip_factor / 60.0;
  const auto V = static_cast<double>(params.total_vaccinators);

  const auto& centres = district.centres;
  const auto& ucs = district.union_councils;

  for (const auto& c : centres) {
    layout.vaccinator_columns.push_back(lp.add_variable("v[" + c.id + "]", 0.0, 0.0, V));
  }

  for (std::size_t u = 0; u < ucs.size(); ++u) {
    for (std::size_t a = 0; a < need.categories.size(); ++a) {
      if (need.visits[u][a] <= 0) continue;
      layout.pairs.push_back({u, a, need.visits[u][a]});
      bool admissible = false;
      for (std::size_t c = 0; c < centres.size(); ++c) {
        if (!params.cross_boundary && centres[c].locality_id != ucs[u].locality_id) continue;
        const double minutes = times.at(c, u);
        if (!std::isfinite(minutes) || minutes < 0.0) {
          throw MissingEntry("no travel time for (" + centres[c].id + ", " + ucs[u].id + ")");
        }
        const std::size_t col = lp.add_variable(
            "x[" + centres[c].id + "," + ucs[u].id + "," + need.categories[a] + "]",
            hours_per_unit_minute * minutes);
        layout.flows.push_back({c, u, a, col});
        admissible = true;
      }
      if (!admissible) {
        throw BuildError("no admissible flow variables for union council '" + ucs[u].id + "' (" +
                         need.categories[a] + "): its locality has no vaccination centre");
      }
    }
  }

  if (layout.exact) {
    layout.alpha_lo_column = layout.alpha_hi_column = lp.add_variable("alpha", 0.0, 0.0, 1.0);
  } else {
    layout.alpha_lo_column = lp.add_variable("alpha_lo", 0.0, 0.0, 1.0);
    layout.alpha_hi_column = lp.add_variable("alpha_hi", 0.0, 0.0, 1.0);
  }

  const std::size_t width = lp.num_variables();
  std::vector<std::vector<std::size_t>> flows_of_pair(layout.pairs.size());
  std::vector<std::vector<std::size_t>> flows_of_centre(centres.size());
  {
    std::size_t p = 0;
    for (std::size_t f = 0; f < layout.flows.size(); ++f) {
      const auto& flow = layout.flows[f];
      while (layout.pairs[p].union_council != flow.union_council || layout.pairs[p].category != flow.category) ++p;
      flows_of_pair[p].push_back(flow.column);
      flows_of_centre[flow.centre].push_back(flow.column);
    }
  }

  auto pair_name = [&](std::size_t p) {
    return ucs[layout.pairs[p].union_council].id + "," + need.categories[layout.pairs[p].category];
  };

  // Coverage rows. In visits: sum_c x = alpha * N; flows are in units of K
  // visits, so the alpha coefficient is N / K.
  for (std::size_t p = 0; p < layout.pairs.size(); ++p) {
    std::vector<double> row(width, 0.0);
    for (std::size_t col : flows_of_pair[p]) row[col] = 1.0;
    row[layout.alpha_lo_column] = -static_cast<double>(layout.pairs[p].need) / capacity;
    lp.add_constraint(std::move(row), layout.exact ? Relation::Equal : Relation::GreaterEqual, 0.0,
                      "cover[" + pair_name(p) + "]");
  }
  for (std::size_t c = 0; c < centres.size(); ++c) {
    std::vector<double> row(width, 0.0);
    for (std::size_t col : flows_of_centre[c]) row[col] = 1.0;
    row[layout.vaccinator_columns[c]] = -1.0;
    lp.add_constraint(std::move(row), Relation::Equal, 0.0, "utilise[" + centres[c].id + "]");
  }
  {
    std::vector<double> row(width, 0.0);
    for (std::size_t col : layout.vaccinator_columns) row[col] = 1.0;
    lp.add_constraint(std::move(row), Relation::Equal, V, "budget");
  }
  if (!layout.exact) {
    for (std::size_t p = 0; p < layout.pairs.size(); ++p) {
      std::vector<double> row(width, 0.0);
      for (std::size_t col : flows_of_pair[p]) row[col] = 1.0;
      row[layout.alpha_hi_column] = -static_cast<double>(layout.pairs[p].need) / capacity;
      lp.add_constraint(std::move(row), Relation::LessEqual, 0.0, "band_hi[" + pair_name(p) + "]");
    }
    std::vector<double> row(width, 0.0);
    row[layout.alpha_hi_column] = 1.0;
    row[layout.alpha_lo_column] = -1.0;
    lp.add_constraint(std::move(row), Relation::LessEqual, params.equity_deviation, "spread");
  }

  out.mip.integer_mask.assign(width, false);
  for (std::size_t col : layout.vaccinator_columns) out.mip.integer_mask[col] = true;
  return out;
}

AllocationPlan extract_plan(const AllocationProgram& program, const MipSolution& solution,
                            const NeedMatrix& need, const TravelTimeMatrix& times,
                            const District& district, const PlanningParams& params) {
  const ProgramLayout& layout = program.layout;
  AllocationPlan plan;

  for (std::size_t c = 0; c < district.centres.size(); ++c) {
    const auto count = static_cast<std::int64_t>(std::llround(solution.values[layout.vaccinator_columns[c]]));
    plan.vaccinators_by_centre.emplace_back(district.centres[c].id, count);
  }
  for (const auto& locality : district.localities) {
    std::int64_t total = 0;
    for (std::size_t c : district.centres_in(locality.id)) total += plan.vaccinators_by_centre[c].second;
    plan.vaccinators_by_locality.emplace_back(locality.id, total);
  }

  std::vector<double> delivered(layout.pairs.size(), 0.0);
  std::size_t p = 0;
  const double hours_per_visit_minute =
      params.round_trip_factor / 60.0 / static_cast<double>(params.children_per_day);
  for (const auto& flow : layout.flows) {
    while (layout.pairs[p].union_council != flow.union_council || layout.pairs[p].category != flow.category) ++p;
    const double visits = std::max(0.0, solution.values[flow.column]) * layout.visits_per_flow_unit;
    delivered[p] += visits;
    plan.total_travel_hours += visits * hours_per_visit_minute * times.at(flow.centre, flow.union_council);
    if (visits > 0.0) {
      plan.flows.push_back({district.centres[flow.centre].id, district.union_councils[flow.union_council].id,
                            need.categories[flow.category], visits});
    }
  }

  plan.alpha_max = 0.0;
  plan.alpha_min = layout.pairs.empty() ? 0.0 : 1.0;
  for (std::size_t q = 0; q < layout.pairs.size(); ++q) {
    const auto& pair = layout.pairs[q];
    const double alpha = delivered[q] / static_cast<double>(pair.need);
    plan.coverage.push_back({district.union_councils[pair.union_council].id, need.categories[pair.category],
                             pair.need, delivered[q], alpha});
    plan.alpha_max = std::max(plan.alpha_max, alpha);
    plan.alpha_min = std::min(plan.alpha_min, alpha);
  }
  return plan;
}

AllocationOutcome solve_allocation(const District& district, const NeedMatrix& need,
                                   const TravelTimeMatrix& times, const PlanningParams& params,
                                   const MipOptions& options) {
  params.validate();
  AllocationOutcome outcome;
  outcome.params = params;

  const std::int64_t capacity = params.total_vaccinators * params.capacity_per_vaccinator();
  if (capacity > need.total_visits) {
    std::ostringstream msg;
    msg << "annual capacity of " << params.total_vaccinators << " vaccinators (" << capacity
        << " visits) exceeds the total need of " << need.total_visits
        << " visits; every vaccinator must be fully used, so use at most "
        << need.total_visits / params.capacity_per_vaccinator() << " vaccinators";
    outcome.diagnostic = msg.str();
    check_inputs(need, times, district);
    return outcome;
  }

  const AllocationProgram program = build_program(need, times, district, params);
  const MipSolution solution = solve_mip(program.mip, options);
  outcome.nodes_explored = solution.nodes_explored;
  outcome.limit_reached = solution.limit_reached;
  if (solution.status != MipStatus::Optimal) {
    outcome.diagnostic = solution.limit_reached
                             ? "search limit reached before any feasible allocation was found"
                             : params.uses_exact_equity()
                                   ? "no integer allocation gives every union council the same coverage"
                                   : "no integer allocation keeps coverage within the equity band";
    return outcome;
  }
  outcome.status = PlanStatus::Optimal;
  outcome.plan = extract_plan(program, solution, need, times, district, params);
  return outcome;
}

std::optional<double> infeasibility_threshold(const District& district, const NeedMatrix& need,
                                              const TravelTimeMatrix& times, PlanningParams params,
                                              const std::vector<double>& epsilon_grid) {
  if (!std::is_sorted(epsilon_grid.begin(), epsilon_grid.end())) {
    throw DomainError("epsilon grid must be sorted ascending");
  }
  params.exact_equity = false;
  for (double eps : epsilon_grid) {
    params.equity_deviation = eps;
    if (solve_allocation(district, need, times, params).status == PlanStatus::Optimal) return eps;
  }
  return std::nullopt;
}

}  // namespace vaxalloc
