#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vaxalloc/allocation.hpp"

namespace vaxalloc {

struct PercentSaving {
  double raw = 0.0;      // 100 * (reference - candidate) / reference
  double display = 0.0;  // raw rounded half-up to one decimal
};

// Throws DomainError unless reference_hours > 0.
PercentSaving percent_saving(double reference_hours, double candidate_hours);

// Half-up rounding to one decimal place.
double round_one_decimal(double value);

struct TradeoffRow {
  double epsilon = 0.0;
  PlanStatus status = PlanStatus::Infeasible;
  double travel_hours = 0.0;
  double alpha_max = 0.0;
  double alpha_min = 0.0;
  std::vector<std::pair<std::string, std::int64_t>> vaccinators_by_locality;
  std::size_t nodes_explored = 0;
  bool limit_reached = false;
};

struct TradeoffTable {
  std::vector<TradeoffRow> rows;  // ascending epsilon
  // Smallest feasible epsilon, the reference for savings.
  std::optional<double> baseline_epsilon;

  const TradeoffRow* baseline() const;
};

// One independent banded solve per epsilon. `workers` > 1 solves rows
// concurrently; the table is identical either way.
TradeoffTable sweep(const District& district, const NeedMatrix& need, const TravelTimeMatrix& times,
                    const PlanningParams& params, const std::vector<double>& epsilons,
                    unsigned workers = 1, const MipOptions& options = {});

struct ModelComparison {
  AllocationOutcome model1;  // locality-bound, banded at params.equity_deviation
  AllocationOutcome model2;  // cross-boundary, exact equity unless params says otherwise
  std::optional<PercentSaving> saving;  // Model 2 over Model 1, when both are feasible
  // Per-locality change in vaccinators (Model 2 minus Model 1).
  std::vector<std::pair<std::string, std::int64_t>> locality_shift;
};

ModelComparison compare_models(const District& district, const NeedMatrix& need,
                               const TravelTimeMatrix& times, const PlanningParams& params,
                               const MipOptions& options = {});

}  // namespace vaxalloc
