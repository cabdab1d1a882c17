#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "teamcov/errors.hpp"
#include "teamcov/oracle.hpp"

using namespace teamcov;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Second enumeration: recursive choice over ground points, with every
// remaining class tried at each chosen point.
double recursive_optimum(const Environment& env, const std::vector<Vec2>& pts, std::vector<std::size_t> left,
                         const std::vector<AgentClass>& classes) {
  double best = 0.0;
  std::vector<Placement> chosen;
  std::function<void(std::size_t)> go = [&](std::size_t from) {
    const bool done = std::all_of(left.begin(), left.end(), [](std::size_t n) { return n == 0; });
    if (done) {
      best = std::max(best, set_coverage(env, chosen));
      return;
    }
    for (std::size_t j = from; j < pts.size(); ++j) {
      for (std::size_t c = 0; c < classes.size(); ++c) {
        if (left[c] == 0) continue;
        --left[c];
        chosen.push_back({pts[j], classes[c]});
        go(j + 1);
        chosen.pop_back();
        ++left[c];
      }
    }
  };
  go(0);
  return best;
}

}  // namespace

TEST_CASE("exhaustive set optimum against a recursive enumeration") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {square(130, 100, 170, 200)}), 6.0,
                        DensityField::uniform(1.0));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 300.0);
  GroundSet ground;
  ground.rank = 3;
  while (ground.points.size() < 12) {
    const Vec2 p{u(rng), u(rng)};
    if (is_feasible(env.space(), p)) ground.points.push_back(p);
  }
  const AgentClass a = make_agent_class(1.0, 0.02, 90.0);
  const AgentClass b = make_agent_class(0.7, 0.01, 60.0);

  Roster homog;
  homog.add(a, 3);
  const SetOptimum h = exhaustive_set_optimum(env, ground, homog, OracleBudget{});
  CHECK(h.evaluated == 220);
  CHECK(h.value == doctest::Approx(recursive_optimum(env, ground.points, {3}, {a})).epsilon(1e-12));

  Roster mixed;
  mixed.add(a, 2);
  mixed.add(b, 1);
  const SetOptimum m = exhaustive_set_optimum(env, ground, mixed, OracleBudget{});
  CHECK(m.value == doctest::Approx(recursive_optimum(env, ground.points, {2, 1}, {a, b})).epsilon(1e-12));
  std::vector<Placement> check;
  for (std::size_t k = 0; k < m.points.size(); ++k) {
    check.push_back({ground.points[m.points[k]], mixed.classes[m.classes[k]]});
  }
  CHECK(set_coverage(env, check) == doctest::Approx(m.value));

  OracleBudget tiny;
  tiny.max_subsets = 10;
  CHECK_THROWS_AS(exhaustive_set_optimum(env, ground, homog, tiny), BudgetExceeded);
}

TEST_CASE("trivial optima") {
  const Environment env(MissionSpace(square(0, 0, 400, 100), {}), 5.0, DensityField::uniform(1.0));
  const AgentClass c = make_agent_class(1.0, 0.02, 30.0);
  Roster r;
  r.add(c, 2);
  GroundSet full;
  full.rank = 2;
  full.points = {{50, 50}, {250, 50}};
  const SetOptimum all = exhaustive_set_optimum(env, full, r, OracleBudget{});
  CHECK(all.points == std::vector<std::size_t>{0, 1});

  // Disjoint disks: the optimum is the two best singletons (the interior ones).
  GroundSet disjoint;
  disjoint.rank = 2;
  disjoint.points = {{10, 50}, {100, 50}, {200, 50}, {390, 50}};
  const SetOptimum top = exhaustive_set_optimum(env, disjoint, r, OracleBudget{});
  CHECK(top.points == std::vector<std::size_t>{1, 2});
}

TEST_CASE("composition count") {
  Roster r;
  r.add(make_agent_class(1.0, 0.012, 200.0), 5);
  r.add(make_agent_class(1.0, 0.008, 100.0), 5);
  CHECK(composition_count(r) == 35);
  Roster one;
  one.add(make_agent_class(1.0, 0.012, 200.0), 1);
  CHECK(composition_count(one) == 1);
}

TEST_CASE("team baseline") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 15.0, DensityField::uniform(1.0));
  Roster r;
  r.add(make_agent_class(1.0, 0.012, 100.0), 2);
  r.add(make_agent_class(1.0, 0.02, 60.0), 1);
  const CostModel model = CostModel::make(0.7, env.total_density(), {r.classes[0].gamma(), r.classes[0].gamma(),
                                                                     r.classes[1].gamma()});
  OracleBudget budget;
  budget.restarts = 2;
  const BaselineReport rnd = exhaustive_team_baseline(env, r, model, budget, InitMode::random);
  const BaselineReport again = exhaustive_team_baseline(env, r, model, budget, InitMode::random);
  REQUIRE(rnd.compositions.size() == composition_count(r));
  for (std::size_t k = 0; k < rnd.compositions.size(); ++k) {
    CHECK(rnd.compositions[k].total == again.compositions[k].total);
    const auto& c = rnd.compositions[k];
    CHECK(c.total == doctest::Approx(c.coverage - c.cost));
    CHECK(c.total <= rnd.compositions[rnd.best].total);
  }

  // Only the best composition changes with the weight.
  BaselineReport copy = rnd;
  rescore(copy, r, CostModel::make(1.0, env.total_density(), model.gammas));
  CHECK(copy.compositions[copy.best].counts == std::vector<std::size_t>{2, 1});

  const BaselineReport corner = exhaustive_team_baseline(env, r, model, budget, InitMode::corner);
  CHECK(corner.compositions.size() == rnd.compositions.size());
}

TEST_CASE("single agent baseline moves to the center") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 10.0, DensityField::uniform(1.0));
  Roster r;
  r.add(make_agent_class(1.0, 0.012, 100.0), 1);
  const CostModel model = CostModel::make(1.0, env.total_density(), {r.classes[0].gamma()});
  const BaselineReport rep = exhaustive_team_baseline(env, r, model, OracleBudget{}, InitMode::corner);
  REQUIRE(rep.compositions.size() == 1);
  const Vec2 p = rep.compositions[0].state.positions[0];
  CHECK(distance(p, {150, 150}) < 15.0);
}
