#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "vaxalloc/cli.hpp"
#include "vaxalloc/report.hpp"

using namespace vaxalloc;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "vaxalloc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("solve prints the plan document") {
    const auto r = run_cli({"solve", "--model", "2", "--vaccinators", "46", fixtures::path("dik_fixture.json")});
    REQUIRE(r.code == 0);
    const District& d = fixtures::dik();
    PlanningParams p;
    p.cross_boundary = true;
    const auto outcome = solve_allocation(d, compute_need(d), build_matrix(d), p);
    CHECK(r.out == render(plan_to_json(outcome)));
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["status"] == "OPTIMAL");
    std::int64_t total = 0;
    for (const auto& [k, v] : doc["vaccinators_by_locality"].items()) total += v.get<std::int64_t>();
    CHECK(total == 46);
  }

  TEST_CASE("infeasible plan is still a successful run") {
    const auto r = run_cli({"solve", "-V", "13", "--epsilon", "0", fixtures::path("threshold_fixture.json")});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["status"] == "INFEASIBLE");
  }

  TEST_CASE("synth is byte-identical across runs and matches the bundled fixture") {
    const auto a = run_cli({"synth", "--seed", "1"});
    const auto b = run_cli({"synth", "--seed", "1"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == read_file(fixtures::path("dik_fixture.json")));
  }

  TEST_CASE("unknown flag is a usage error") {
    const auto r = run_cli({"solve", "--frobnicate", fixtures::path("dik_fixture.json")});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"solve", "--model", "3", fixtures::path("dik_fixture.json")}).code == 2);
  }

  TEST_CASE("help exits cleanly") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solve") != std::string::npos);
  }

  TEST_CASE("domain errors exit with 1") {
    CHECK(run_cli({"solve", "-V", "0", fixtures::path("dik_fixture.json")}).code == 1);
    CHECK(run_cli({"validate", "/nonexistent.json"}).code == 1);
    const auto r = run_cli({"sweep", "--epsilons", "0.1,0.05", fixtures::path("threshold_fixture.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("ascending") != std::string::npos);
  }

  TEST_CASE("validate, need and times match the library") {
    const District& d = fixtures::dik();
    const auto need = compute_need(d);
    const auto times = build_matrix(d);
    const std::string file = fixtures::path("dik_fixture.json");
    CHECK(run_cli({"validate", file}).out == render(district_summary(d, need, times)));
    CHECK(run_cli({"need", file}).out == render(need_to_json(need, d)));
    CHECK(run_cli({"need", "--format", "csv", file}).out == need_to_csv(need, d));
    CHECK(run_cli({"times", "--format", "csv", file}).out == matrix_to_csv(times));
    CHECK(run_cli({"validate", "--pretty", file}).out.rfind("ok: ", 0) == 0);
  }

  TEST_CASE("sweep and compare on the threshold fixture") {
    const District& d = fixtures::threshold();
    const auto need = compute_need(d);
    const auto times = build_matrix(d);
    PlanningParams p;
    p.total_vaccinators = fixtures::kThresholdVaccinators;
    const std::string file = fixtures::path("threshold_fixture.json");
    const auto table = sweep(d, need, times, p, {0.0, 0.1});
    CHECK(run_cli({"sweep", "-V", "13", "--epsilons", "0,0.1", file}).out == render(tradeoff_to_json(table)));
    CHECK(run_cli({"sweep", "-V", "13", "--epsilons", "0,0.1", "--format", "csv", file}).out ==
          tradeoff_to_csv(table, d));
    CHECK(run_cli({"compare", "-V", "13", file}).out == render(comparison_to_json(compare_models(d, need, times, p))));
  }

  TEST_CASE("output file and program listing") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto plan = dir / "vaxalloc_plan.json";
    const auto listing = dir / "vaxalloc_program.txt";
    const auto r = run_cli({"solve", "-V", "13", "--epsilon", "0.1", "-o", plan.string(), "--dump-lp",
                            listing.string(), fixtures::path("threshold_fixture.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(nlohmann::json::parse(read_file(plan))["status"] == "OPTIMAL");
    CHECK(read_file(listing).find("v[VC-A]") != std::string::npos);
    std::filesystem::remove(plan);
    std::filesystem::remove(listing);
  }

  TEST_CASE("pretty reports are text") {
    const auto r = run_cli({"solve", "-V", "13", "--epsilon", "0.1", "--pretty", fixtures::path("threshold_fixture.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find('{') == std::string::npos);
  }
}
