#include "vaxalloc/report.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace vaxalloc {

using Json = nlohmann::ordered_json;

namespace {

Json counts_to_json(const std::vector<std::pair<std::string, std::int64_t>>& counts) {
  Json out = Json::object();
  for (const auto& [id, n] : counts) out[id] = n;
  return out;
}

Json saving_to_json(const PercentSaving& s) { return {{"raw", s.raw}, {"display", s.display}}; }

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

std::string locality_name(const District& district, const std::string& id) {
  for (const auto& l : district.localities) {
    if (l.id == id) return l.name.empty() ? id : l.name;
  }
  return id;
}

}  // namespace

Json params_to_json(const PlanningParams& p) {
  return {{"children_per_day", p.children_per_day},
          {"working_days", p.working_days},
          {"capacity_per_vaccinator", p.capacity_per_vaccinator()},
          {"total_vaccinators", p.total_vaccinators},
          {"equity_deviation", p.equity_deviation},
          {"round_trip_factor", p.round_trip_factor},
          {"cross_boundary", p.cross_boundary},
          {"exact_equity", p.uses_exact_equity()}};
}

Json plan_to_json(const AllocationOutcome& outcome) {
  Json doc;
  doc["status"] = to_string(outcome.status);
  doc["model"] = outcome.params.model_number();
  doc["params"] = params_to_json(outcome.params);
  if (outcome.plan) {
    const AllocationPlan& plan = *outcome.plan;
    doc["total_travel_hours"] = plan.total_travel_hours;
    doc["alpha_max"] = plan.alpha_max;
    doc["alpha_min"] = plan.alpha_min;
    doc["vaccinators_by_locality"] = counts_to_json(plan.vaccinators_by_locality);
    doc["vaccinators_by_centre"] = counts_to_json(plan.vaccinators_by_centre);
    Json coverage = Json::array();
    for (const auto& c : plan.coverage) {
      coverage.push_back({{"union_council", c.union_council_id},
                          {"category", c.category},
                          {"need", c.need},
                          {"visits", c.visits},
                          {"alpha", c.alpha}});
    }
    doc["coverage"] = std::move(coverage);
    Json flows = Json::array();
    for (const auto& f : plan.flows) {
      flows.push_back({{"centre", f.centre_id},
                       {"union_council", f.union_council_id},
                       {"category", f.category},
                       {"visits", f.visits}});
    }
    doc["flows"] = std::move(flows);
  } else {
    doc["diagnostic"] = outcome.diagnostic;
  }
  doc["solver"] = {{"nodes_explored", outcome.nodes_explored}, {"limit_reached", outcome.limit_reached}};
  return doc;
}

Json tradeoff_to_json(const TradeoffTable& table) {
  Json doc;
  doc["baseline_epsilon"] = table.baseline_epsilon ? Json(*table.baseline_epsilon) : Json(nullptr);
  const TradeoffRow* base = table.baseline();
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["epsilon"] = row.epsilon;
    r["status"] = to_string(row.status);
    if (row.status == PlanStatus::Optimal) {
      r["travel_hours"] = row.travel_hours;
      r["alpha_max"] = row.alpha_max;
      r["alpha_min"] = row.alpha_min;
      r["vaccinators_by_locality"] = counts_to_json(row.vaccinators_by_locality);
      r["saving_vs_baseline"] = base && base->travel_hours > 0.0
                                    ? saving_to_json(percent_saving(base->travel_hours, row.travel_hours))
                                    : Json(nullptr);
    } else {
      r["travel_hours"] = nullptr;
      r["alpha_max"] = nullptr;
      r["alpha_min"] = nullptr;
      r["vaccinators_by_locality"] = nullptr;
      r["saving_vs_baseline"] = nullptr;
    }
    r["nodes_explored"] = row.nodes_explored;
    r["limit_reached"] = row.limit_reached;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

Json comparison_to_json(const ModelComparison& comparison) {
  Json doc;
  doc["model1"] = plan_to_json(comparison.model1);
  doc["model2"] = plan_to_json(comparison.model2);
  doc["saving"] = comparison.saving ? saving_to_json(*comparison.saving) : Json(nullptr);
  doc["locality_shift"] = comparison.locality_shift.empty() ? Json(nullptr)
                                                            : counts_to_json(comparison.locality_shift);
  return doc;
}

Json district_summary(const District& district, const NeedMatrix& need, const TravelTimeMatrix& times) {
  Json doc;
  doc["name"] = district.name;
  doc["union_councils"] = district.union_councils.size();
  doc["centres"] = district.centres.size();
  Json localities = Json::array();
  for (const auto& l : district.localities) {
    const auto ucs = district.union_councils_in(l.id);
    std::int64_t total = 0;
    for (std::size_t u : ucs) total += need.row_total(u);
    localities.push_back({{"id", l.id},
                          {"name", l.name},
                          {"union_councils", ucs.size()},
                          {"centres", district.centres_in(l.id).size()},
                          {"need", total}});
  }
  doc["localities"] = std::move(localities);
  Json schedule = Json::object();
  for (const auto& s : district.schedule) schedule[s.category] = s.visits_per_child;
  doc["schedule"] = std::move(schedule);
  Json by_category = Json::object();
  for (std::size_t a = 0; a < need.categories.size(); ++a) by_category[need.categories[a]] = need.category_total(a);
  doc["need"] = {{"total_visits", need.total_visits}, {"by_category", std::move(by_category)}};
  if (!times.minutes.empty()) {
    const auto [lo, hi] = std::minmax_element(times.minutes.begin(), times.minutes.end());
    const double mean = std::accumulate(times.minutes.begin(), times.minutes.end(), 0.0) /
                        static_cast<double>(times.minutes.size());
    doc["travel_times"] = {{"entries", times.minutes.size()},
                           {"min_minutes", *lo},
                           {"max_minutes", *hi},
                           {"mean_minutes", mean}};
  }
  return doc;
}

Json need_to_json(const NeedMatrix& need, const District& district) {
  Json doc;
  doc["categories"] = need.categories;
  Json rows = Json::array();
  for (std::size_t u = 0; u < need.union_council_ids.size(); ++u) {
    Json visits = Json::object();
    for (std::size_t a = 0; a < need.categories.size(); ++a) visits[need.categories[a]] = need.visits[u][a];
    rows.push_back({{"union_council", need.union_council_ids[u]},
                    {"locality", district.union_councils[u].locality_id},
                    {"visits", std::move(visits)},
                    {"total", need.row_total(u)}});
  }
  doc["union_councils"] = std::move(rows);
  doc["total_visits"] = need.total_visits;
  return doc;
}

Json times_to_json(const TravelTimeMatrix& times) {
  Json doc;
  doc["centres"] = times.centre_ids;
  doc["union_councils"] = times.union_council_ids;
  Json rows = Json::array();
  for (std::size_t c = 0; c < times.centre_ids.size(); ++c) {
    Json row = Json::array();
    for (std::size_t u = 0; u < times.union_council_ids.size(); ++u) row.push_back(times.at(c, u));
    rows.push_back(std::move(row));
  }
  doc["minutes"] = std::move(rows);
  return doc;
}

std::string render(const Json& document) { return document.dump(2) + "\n"; }

std::string tradeoff_to_csv(const TradeoffTable& table, const District& district) {
  std::ostringstream out;
  out << "epsilon,status,travel_hours,alpha_max,alpha_min";
  for (const auto& l : district.localities) out << ',' << l.id;
  out << '\n';
  for (const auto& row : table.rows) {
    out << format("%.6g", row.epsilon) << ',' << to_string(row.status);
    if (row.status == PlanStatus::Optimal) {
      out << format(",%.4f,%.6f,%.6f", row.travel_hours, row.alpha_max, row.alpha_min);
      for (const auto& [id, n] : row.vaccinators_by_locality) out << ',' << n;
    } else {
      out << ",,,";
      for (std::size_t l = 0; l < district.localities.size(); ++l) out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::string plan_to_text(const AllocationOutcome& outcome, const District& district) {
  std::ostringstream out;
  const PlanningParams& p = outcome.params;
  out << "Model " << p.model_number() << (p.cross_boundary ? " (cross-boundary service)" : " (locality-bound service)")
      << ", " << p.total_vaccinators << " vaccinators, "
      << (p.uses_exact_equity() ? std::string("exact equity") : format("equity deviation %.1f%%", 100.0 * p.equity_deviation))
      << '\n';
  if (!outcome.plan) {
    out << "Status: INFEASIBLE\n" << outcome.diagnostic << '\n';
    return out.str();
  }
  const AllocationPlan& plan = *outcome.plan;
  out << format("Annual travel time: %.0f hours\n", plan.total_travel_hours);
  if (p.uses_exact_equity()) {
    out << format("Coverage (alpha): %.1f%%\n", 100.0 * plan.alpha_max);
  } else {
    out << format("alpha_max: %.1f%%   alpha_min: %.1f%%\n", 100.0 * plan.alpha_max, 100.0 * plan.alpha_min);
  }
  out << "\nVaccinators by locality\n";
  for (const auto& [id, n] : plan.vaccinators_by_locality) {
    out << format("  %-24s %4lld\n", locality_name(district, id).c_str(), static_cast<long long>(n));
  }
  out << "\nVaccinators by centre\n";
  for (const auto& [id, n] : plan.vaccinators_by_centre) {
    if (n > 0) out << format("  %-24s %4lld\n", id.c_str(), static_cast<long long>(n));
  }
  out << "\nCoverage by union council\n";
  for (const auto& c : plan.coverage) {
    out << format("  %-10s %-10s need %8lld  visits %10.1f  %5.1f%%\n", c.union_council_id.c_str(),
                  c.category.c_str(), static_cast<long long>(c.need), c.visits, 100.0 * c.alpha);
  }
  return out.str();
}

std::string tradeoff_to_text(const TradeoffTable& table, const District& district) {
  std::ostringstream out;
  out << format("%-22s", "Deviation from equity");
  for (const auto& row : table.rows) out << format("%10.1f%%", 100.0 * row.epsilon);
  out << '\n' << format("%-22s", "Annual travel (hours)");
  for (const auto& row : table.rows) {
    out << (row.status == PlanStatus::Optimal ? format("%11.0f", row.travel_hours) : format("%11s", "infeasible"));
  }
  out << '\n' << format("%-22s", "alpha_max");
  for (const auto& row : table.rows) {
    out << (row.status == PlanStatus::Optimal ? format("%10.1f%%", 100.0 * row.alpha_max) : format("%11s", "-"));
  }
  out << '\n' << format("%-22s", "alpha_min");
  for (const auto& row : table.rows) {
    out << (row.status == PlanStatus::Optimal ? format("%10.1f%%", 100.0 * row.alpha_min) : format("%11s", "-"));
  }
  out << '\n';
  for (std::size_t l = 0; l < district.localities.size(); ++l) {
    out << format("%-22s", locality_name(district, district.localities[l].id).c_str());
    for (const auto& row : table.rows) {
      out << (row.status == PlanStatus::Optimal
                  ? format("%11lld", static_cast<long long>(row.vaccinators_by_locality[l].second))
                  : format("%11s", "-"));
    }
    out << '\n';
  }
  if (const TradeoffRow* base = table.baseline(); base && base->travel_hours > 0.0) {
    const TradeoffRow* last = nullptr;
    for (const auto& row : table.rows) {
      if (row.status == PlanStatus::Optimal) last = &row;
    }
    if (last != base) {
      out << format("Saving from %.1f%% to %.1f%% deviation: %.1f%%\n", 100.0 * base->epsilon, 100.0 * last->epsilon,
                    percent_saving(base->travel_hours, last->travel_hours).display);
    }
  }
  return out.str();
}

std::string comparison_to_text(const ModelComparison& comparison, const District& district) {
  std::ostringstream out;
  out << plan_to_text(comparison.model1, district) << '\n' << plan_to_text(comparison.model2, district) << '\n';
  if (comparison.saving) {
    out << format("Model 2 travel is %.1f%% less than Model 1\n", comparison.saving->display);
  } else if (!comparison.model1.plan || !comparison.model2.plan) {
    out << "No saving reported: " << (!comparison.model1.plan ? "Model 1" : "Model 2") << " is infeasible\n";
  }
  return out.str();
}

}  // namespace vaxalloc
