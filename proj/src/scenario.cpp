#include "vaxalloc/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vaxalloc/errors.hpp"

namespace vaxalloc {

double round_one_decimal(double value) {
  // The nudge keeps values such as 14.45 (stored as 14.4499999...) rounding up.
  const double scaled = value * 10.0;
  return std::floor(scaled + 0.5 + 1e-9 * std::max(1.0, std::abs(scaled))) / 10.0;
}

PercentSaving percent_saving(double reference_hours, double candidate_hours) {
  if (!(reference_hours > 0.0)) throw DomainError("reference travel time must be > 0");
  PercentSaving out;
  out.raw = 100.0 * (reference_hours - candidate_hours) / reference_hours;
  out.display = round_one_decimal(out.raw);
  return out;
}

const TradeoffRow* TradeoffTable::baseline() const {
  if (!baseline_epsilon) return nullptr;
  for (const auto& row : rows) {
    if (row.status == PlanStatus::Optimal && row.epsilon == *baseline_epsilon) return &row;
  }
  return nullptr;
}

namespace {

TradeoffRow solve_row(const District& district, const NeedMatrix& need, const TravelTimeMatrix& times,
                      PlanningParams params, double epsilon, const MipOptions& options) {
  params.equity_deviation = epsilon;
  params.exact_equity = false;
  const AllocationOutcome outcome = solve_allocation(district, need, times, params, options);
  TradeoffRow row;
  row.epsilon = epsilon;
  row.status = outcome.status;
  row.nodes_explored = outcome.nodes_explored;
  row.limit_reached = outcome.limit_reached;
  if (outcome.plan) {
    row.travel_hours = outcome.plan->total_travel_hours;
    row.alpha_max = outcome.plan->alpha_max;
    row.alpha_min = outcome.plan->alpha_min;
    row.vaccinators_by_locality = outcome.plan->vaccinators_by_locality;
  }
  return row;
}

}  // namespace

TradeoffTable sweep(const District& district, const NeedMatrix& need, const TravelTimeMatrix& times,
                    const PlanningParams& params, const std::vector<double>& epsilons, unsigned workers,
                    const MipOptions& options) {
  if (epsilons.empty()) throw DomainError("epsilon grid is empty");
  if (!std::is_sorted(epsilons.begin(), epsilons.end())) {
    throw DomainError("epsilon grid must be sorted ascending");
  }
  for (double eps : epsilons) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("equity_deviation must be >= 0");
  }
  params.validate();

  TradeoffTable table;
  table.rows.resize(epsilons.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(epsilons.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
      table.rows[i] = solve_row(district, need, times, params, epsilons[i], options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < epsilons.size(); i = next++) {
            try {
              table.rows[i] = solve_row(district, need, times, params, epsilons[i], options);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  for (const auto& row : table.rows) {
    if (row.status == PlanStatus::Optimal) {
      table.baseline_epsilon = row.epsilon;
      break;
    }
  }
  return table;
}

ModelComparison compare_models(const District& district, const NeedMatrix& need,
                               const TravelTimeMatrix& times, const PlanningParams& params,
                               const MipOptions& options) {
  ModelComparison out;

  PlanningParams m1 = params;
  m1.cross_boundary = false;
  m1.exact_equity = false;
  out.model1 = solve_allocation(district, need, times, m1, options);

  PlanningParams m2 = params;
  m2.cross_boundary = true;
  m2.exact_equity = params.exact_equity.value_or(true);
  out.model2 = solve_allocation(district, need, times, m2, options);

  if (out.model1.plan && out.model2.plan) {
    if (out.model1.plan->total_travel_hours > 0.0) {
      out.saving = percent_saving(out.model1.plan->total_travel_hours, out.model2.plan->total_travel_hours);
    }
    for (std::size_t l = 0; l < district.localities.size(); ++l) {
      out.locality_shift.emplace_back(district.localities[l].id,
                                      out.model2.plan->vaccinators_by_locality[l].second -
                                          out.model1.plan->vaccinators_by_locality[l].second);
    }
  }
  return out;
}

}  // namespace vaxalloc
