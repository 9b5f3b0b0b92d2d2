#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "vaxalloc/district.hpp"
#include "vaxalloc/errors.hpp"
#include "vaxalloc/json_schema.hpp"

using namespace vaxalloc;

namespace {

District tiny() {
  District d;
  d.name = "tiny";
  d.localities = {{"L1", "One"}, {"L2", "Two"}, {"L3", "Three"}};
  d.network.nodes = {"a", "b", "c"};
  d.network.edges = {{"a", "b", 4.0, Surface::Metalled}, {"b", "c", 2.5, Surface::Unmetalled}};
  d.union_councils = {{"U1", "", "L1", "a", {{"INFANT", 10}, {"PRESCHOOL", 5}}},
                      {"U2", "", "L2", "b", {{"INFANT", 3}}},
                      {"U3", "", "L3", "c", {}}};
  d.centres = {{"C1", "", "L1", "a"}, {"C2", "", "L2", "b"}, {"C3", "", "L3", "c"}};
  return d;
}

}  // namespace

TEST_SUITE("district") {
  TEST_CASE("round trip through json keeps every field") {
    const District d = tiny();
    validate(d);
    const District back = district_from_json(to_json(d));
    CHECK(back == d);
    CHECK(back.localities.size() == 3);
  }

  TEST_CASE("save and load reproduce the district") {
    const auto file = std::filesystem::temp_directory_path() / "vaxalloc_roundtrip.json";
    save_district(tiny(), file);
    CHECK(load_district(file) == tiny());
    std::filesystem::remove(file);
  }

  TEST_CASE("centre in an undeclared locality names that locality") {
    District d = tiny();
    d.centres[1].locality_id = "X";
    try {
      validate(d);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.offending_id() == "X");
    }
  }

  TEST_CASE("zero-length edge is rejected on that edge") {
    District d = tiny();
    d.network.edges[1].length_km = 0.0;
    try {
      validate(d);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.offending_id() == "edge[1]");
    }
  }

  TEST_CASE("other broken invariants") {
    District dup = tiny();
    dup.union_councils[1].id = "U1";
    CHECK_THROWS_AS(validate(dup), ValidationError);

    District node = tiny();
    node.union_councils[0].network_node = "zz";
    CHECK_THROWS_AS(validate(node), ValidationError);

    District negative = tiny();
    negative.union_councils[0].population[0].second = -1;
    CHECK_THROWS_AS(validate(negative), ValidationError);

    District unscheduled = tiny();
    unscheduled.union_councils[0].population.emplace_back("ADULT", 1);
    CHECK_THROWS_AS(validate(unscheduled), ValidationError);

    District no_centres = tiny();
    no_centres.centres.clear();
    CHECK_THROWS_AS(validate(no_centres), ValidationError);
  }

  TEST_CASE("malformed documents are parse errors") {
    CHECK_THROWS_AS(parse_district("{not json"), ParseError);
    CHECK_THROWS_AS(parse_district("{}"), ParseError);
    auto doc = to_json(tiny());
    doc["network"]["edges"][0]["surface"] = "GRAVEL";
    CHECK_THROWS_AS(district_from_json(doc), ParseError);
    auto extra = to_json(tiny());
    extra["surprise"] = 1;
    CHECK_THROWS_AS(district_from_json(extra), ParseError);
    CHECK_THROWS_AS(load_district("/nonexistent/district.json"), ParseError);
  }

  TEST_CASE("bundled fixtures satisfy the schema and the invariants") {
    for (const char* name : {"dik_fixture.json", "threshold_fixture.json"}) {
      const District d = load_district(fixtures::path(name));
      CHECK(validate_against_schema(district_schema(), to_json(d)).empty());
    }
    CHECK(fixtures::dik().localities.size() == 3);
    CHECK(fixtures::dik().union_councils.size() == 25);
    CHECK(fixtures::dik().centres.size() == 16);
  }

  TEST_CASE("schema validator reports the offending path") {
    const auto schema = nlohmann::ordered_json::parse(R"({
      "type": "object", "required": ["n"], "additionalProperties": false,
      "properties": {"n": {"type": "integer", "minimum": 1}, "s": {"type": "string", "minLength": 2}}})");
    CHECK(validate_against_schema(schema, nlohmann::ordered_json::parse(R"({"n": 3})")).empty());
    auto v = validate_against_schema(schema, nlohmann::ordered_json::parse(R"({"n": 0})"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "/n");
    CHECK_FALSE(validate_against_schema(schema, nlohmann::ordered_json::parse(R"({"s": "x"})")).empty());
    CHECK_FALSE(validate_against_schema(schema, nlohmann::ordered_json::parse(R"({"n": 2, "q": 1})")).empty());
  }

  TEST_CASE("synthetic generator matches the requested shape") {
    const District d = generate_synthetic(1);
    validate(d);
    CHECK(d.localities.size() == 3);
    CHECK(d.union_councils.size() == 25);
    CHECK(d.centres.size() == 16);
    for (const auto& l : d.localities) CHECK_FALSE(d.centres_in(l.id).empty());
  }

  TEST_CASE("synthetic generator is deterministic") {
    CHECK(generate_synthetic(1) == generate_synthetic(1));
    CHECK(generate_synthetic(7) == generate_synthetic(7));
    CHECK_FALSE(generate_synthetic(1) == generate_synthetic(2));
  }

  TEST_CASE("bundled fixture is the seed-1 synthetic district") {
    CHECK(generate_synthetic(1) == fixtures::dik());
  }

  TEST_CASE("minimal shape gives a minimal valid district") {
    SyntheticShape shape;
    shape.n_localities = 1;
    shape.n_union_councils = 1;
    shape.n_centres = 1;
    const District d = generate_synthetic(3, shape);
    validate(d);
    CHECK(d.localities.size() == 1);
    CHECK(d.union_councils.size() == 1);
    CHECK(d.centres.size() == 1);
  }

  TEST_CASE("lookups by locality") {
    const District d = tiny();
    CHECK(d.locality_index("L2") == 1u);
    CHECK_FALSE(d.locality_index("nope").has_value());
    CHECK(d.centres_in("L3") == std::vector<std::size_t>{2});
    CHECK(d.union_councils_in("L1") == std::vector<std::size_t>{0});
    CHECK(d.union_councils[2].population_of("INFANT") == 0);
  }
}
