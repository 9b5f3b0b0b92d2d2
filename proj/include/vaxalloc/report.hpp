#pragma once

#include <string>

#include <json.hpp>

#include "vaxalloc/allocation.hpp"
#include "vaxalloc/scenario.hpp"

namespace vaxalloc {

// Machine-readable documents. The CLI prints and the service returns
// exactly `document.dump(2)`, so both channels are byte-identical.
nlohmann::ordered_json params_to_json(const PlanningParams& params);
nlohmann::ordered_json plan_to_json(const AllocationOutcome& outcome);
nlohmann::ordered_json tradeoff_to_json(const TradeoffTable& table);
nlohmann::ordered_json comparison_to_json(const ModelComparison& comparison);
nlohmann::ordered_json district_summary(const District& district, const NeedMatrix& need,
                                        const TravelTimeMatrix& times);

nlohmann::ordered_json need_to_json(const NeedMatrix& need, const District& district);
nlohmann::ordered_json times_to_json(const TravelTimeMatrix& times);

std::string render(const nlohmann::ordered_json& document);

// Delimited text: epsilon, status, travel hours, alphas, one column per locality.
std::string tradeoff_to_csv(const TradeoffTable& table, const District& district);

// Human-readable reports.
std::string plan_to_text(const AllocationOutcome& outcome, const District& district);
std::string tradeoff_to_text(const TradeoffTable& table, const District& district);
std::string comparison_to_text(const ModelComparison& comparison, const District& district);

}  // namespace vaxalloc
