#include <string>

#include "doctest.h"
#include "json.hpp"
#include "teamcov/errors.hpp"
#include "teamcov/scenario.hpp"

using namespace teamcov;

namespace {

const char* kMinimal = R"({
  "name": "tiny",
  "space": {"outer": [[0, 0], [200, 0], [200, 200], [0, 200]],
            "obstacles": [[[80, 80], [120, 80], [120, 120], [80, 120]]]},
  "grid": {"cell": 5},
  "roster": [{"p0": 1.0, "lambda": 0.012, "delta": 60, "w2": 1.0, "count": 3}],
  "weights": {"w1": 0.7}
})";

}  // namespace

TEST_CASE("scenario parsing and defaults") {
  const Scenario sc = parse_scenario(kMinimal, "inline");
  CHECK(sc.name == "tiny");
  CHECK(sc.obstacles.size() == 1);
  CHECK(sc.grid_cell == 5.0);
  CHECK(sc.roster.size() == 3);
  CHECK(sc.w1 == 0.7);
  CHECK(sc.lattice == 10);
  CHECK(sc.pga.eta_s == PgaConfig{}.eta_s);
  const Environment env = sc.environment();
  CHECK(env.total_density() == doctest::Approx(40000.0));
  CHECK(sc.cost_model(env).gammas.size() == 3);
}

TEST_CASE("scenario round trip") {
  const Scenario sc = parse_scenario(kMinimal, "inline");
  const Scenario back = parse_scenario(scenario_to_json(sc), "round trip");
  CHECK(back.name == sc.name);
  CHECK(back.roster.classes == sc.roster.classes);
  CHECK(back.roster.counts == sc.roster.counts);
  CHECK(back.outer == sc.outer);
  CHECK(back.pga.max_iters == sc.pga.max_iters);
  CHECK(back.seed == sc.seed);
}

TEST_CASE("scenario errors") {
  auto edit = [](const std::function<void(nlohmann::json&)>& f) {
    nlohmann::json j = nlohmann::json::parse(kMinimal);
    f(j);
    return j.dump();
  };
  CHECK_THROWS_AS(parse_scenario("{", "broken"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(edit([](auto& j) { j["colour"] = 1; }), "x"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(edit([](auto& j) { j["pga"] = {{"eta", 1}}; }), "x"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(edit([](auto& j) { j["weights"]["w1"] = 0.0; }), "x"), Error);
  CHECK_THROWS_AS(parse_scenario(edit([](auto& j) { j["roster"][0]["count"] = 65; }), "x"), Error);
  CHECK_THROWS_AS(parse_scenario(edit([](auto& j) { j["roster"][0]["p0"] = 2.0; }), "x"), Error);
  CHECK_THROWS_AS(parse_scenario(edit([](auto& j) { j["space"]["outer"] = {{0, 0}, {1, 1}}; }), "x"), Error);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST_CASE("shipped scenarios load") {
  for (const char* name : {"general", "room", "maze", "narrow", "blank", "general_hetero", "blank_two_class"}) {
    CAPTURE(name);
    const Scenario sc = load_scenario(std::string(TEAMCOV_SCENARIO_DIR) + "/" + name + ".json");
    CHECK_NOTHROW(sc.validate());
    CHECK(sc.roster.size() == 10);
  }
}
