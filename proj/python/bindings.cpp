#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "vaxalloc/errors.hpp"
#include "vaxalloc/report.hpp"
#include "vaxalloc/scenario.hpp"

namespace py = pybind11;
using namespace vaxalloc;

namespace {

// A district argument is either a path to a JSON file or the JSON text itself.
District district_arg(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_district(source);
  return load_district(std::filesystem::path(source));
}

PlanningParams params_arg(int model, std::int64_t vaccinators, double epsilon, double round_trip,
                          std::int64_t children_per_day, std::int64_t working_days, std::optional<bool> exact) {
  PlanningParams p;
  if (model != 1 && model != 2) throw DomainError("model must be 1 or 2");
  p.cross_boundary = model == 2;
  p.total_vaccinators = vaccinators;
  p.equity_deviation = epsilon;
  p.round_trip_factor = round_trip;
  p.children_per_day = children_per_day;
  p.working_days = working_days;
  p.exact_equity = exact;
  p.validate();
  return p;
}

struct Loaded {
  District district;
  NeedMatrix need;
  TravelTimeMatrix times;
  explicit Loaded(const std::string& source)
      : district(district_arg(source)), need(compute_need(district)), times(build_matrix(district)) {}
};

#define PLAN_ARGS                                                                                          \
  py::arg("model") = 1, py::arg("total_vaccinators") = 46, py::arg("equity_deviation") = 0.03,            \
  py::arg("round_trip_factor") = 2.0, py::arg("children_per_day") = 5, py::arg("working_days") = 273,    \
  py::arg("exact_equity") = py::none()

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vaccinator allocation planner";

  py::register_exception<Error>(m, "VaxallocError", PyExc_ValueError);

  m.def("validate", [](const std::string& source) {
    const Loaded l(source);
    return render(district_summary(l.district, l.need, l.times));
  }, py::arg("district"));

  m.def("synth", [](std::uint64_t seed, int localities, int union_councils, int centres) {
    SyntheticShape shape;
    shape.n_localities = localities;
    shape.n_union_councils = union_councils;
    shape.n_centres = centres;
    return to_json(generate_synthetic(seed, shape)).dump(2) + "\n";
  }, py::arg("seed") = 1, py::arg("localities") = 3, py::arg("union_councils") = 25, py::arg("centres") = 16);

  m.def("need", [](const std::string& source) {
    const District d = district_arg(source);
    return render(need_to_json(compute_need(d), d));
  }, py::arg("district"));

  m.def("times", [](const std::string& source, double metalled_kmh, double unmetalled_kmh) {
    SpeedModel speeds{metalled_kmh, unmetalled_kmh};
    speeds.validate();
    return render(times_to_json(build_matrix(district_arg(source), speeds)));
  }, py::arg("district"), py::arg("metalled_kmh") = 30.0, py::arg("unmetalled_kmh") = 10.0);

  m.def("solve", [](const std::string& source, int model, std::int64_t v, double eps, double rt, std::int64_t cpd,
                    std::int64_t wd, std::optional<bool> exact) {
    const PlanningParams p = params_arg(model, v, eps, rt, cpd, wd, exact);
    const Loaded l(source);
    py::gil_scoped_release release;
    return render(plan_to_json(solve_allocation(l.district, l.need, l.times, p)));
  }, py::arg("district"), PLAN_ARGS);

  m.def("sweep", [](const std::string& source, const std::vector<double>& epsilons, int model, std::int64_t v,
                    double eps, double rt, std::int64_t cpd, std::int64_t wd, std::optional<bool> exact) {
    const PlanningParams p = params_arg(model, v, eps, rt, cpd, wd, exact);
    const Loaded l(source);
    py::gil_scoped_release release;
    return render(tradeoff_to_json(sweep(l.district, l.need, l.times, p, epsilons)));
  }, py::arg("district"), py::arg("epsilons") = std::vector<double>{0.03, 0.05, 0.10, 0.15, 0.20, 0.25}, PLAN_ARGS);

  m.def("compare", [](const std::string& source, int model, std::int64_t v, double eps, double rt,
                      std::int64_t cpd, std::int64_t wd, std::optional<bool> exact) {
    const PlanningParams p = params_arg(model, v, eps, rt, cpd, wd, exact);
    const Loaded l(source);
    py::gil_scoped_release release;
    return render(comparison_to_json(compare_models(l.district, l.need, l.times, p)));
  }, py::arg("district"), PLAN_ARGS);

  m.def("percent_saving", [](double reference, double candidate) {
    const auto s = percent_saving(reference, candidate);
    return py::make_tuple(s.raw, s.display);
  }, py::arg("reference_hours"), py::arg("candidate_hours"));
}
