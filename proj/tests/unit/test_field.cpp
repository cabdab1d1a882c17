#include <cmath>

#include "doctest.h"
#include "teamcov/errors.hpp"
#include "teamcov/field.hpp"

using namespace teamcov;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

TeamState team_of(std::vector<Vec2> pos, std::vector<double> t, const AgentClass& c) {
  TeamState s;
  s.positions = std::move(pos);
  s.memberships = std::move(t);
  s.classes.assign(s.positions.size(), c);
  return s;
}

}  // namespace

TEST_CASE("joint detection") {
  CHECK(joint_detection(std::vector<double>{}) == 0.0);
  CHECK(joint_detection(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.75));
  CHECK(joint_detection(std::vector<double>{1.0, 0.3}) == 1.0);
}

TEST_CASE("total density covers the outer polygon including obstacles") {
  const Environment env(MissionSpace(square(0, 0, 600, 600), {square(100, 100, 200, 200)}), 10.0,
                        DensityField::uniform(1.0));
  CHECK(env.total_density() == doctest::Approx(360000.0));
  const Environment dense(MissionSpace(square(0, 0, 100, 100), {}), 5.0, DensityField::uniform(2.5));
  CHECK(dense.total_density() == doctest::Approx(25000.0));
}

TEST_CASE("single agent coverage and objective") {
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const Environment env(MissionSpace(square(0, 0, 600, 600), {}), 5.0, DensityField::uniform(1.0));
  const TeamState one = team_of({{300, 300}}, {1.0}, c);
  const CostModel model = CostModel::make(0.68, env.total_density(), {c.gamma()});
  const ObjectiveBreakdown o = evaluate_objective(env, one, model);
  CHECK(o.coverage == doctest::Approx(c.kappa()).epsilon(0.01));
  CHECK(o.cost == doctest::Approx(model.beta * c.gamma()));
  CHECK(o.total == doctest::Approx(o.coverage - o.cost));

  // Coverage scales linearly with the membership of a lone agent.
  const TeamState half = team_of({{300, 300}}, {0.5}, c);
  CHECK(evaluate_objective(env, half, model).coverage == doctest::Approx(0.5 * o.coverage));
}

TEST_CASE("disjoint disks add up and overlaps do not") {
  const AgentClass c = make_agent_class(0.9, 0.02, 40.0);
  const Environment env(MissionSpace(square(0, 0, 400, 200), {}), 2.0, DensityField::uniform(1.0));
  const std::vector<Placement> a{{{100, 100}, c}};
  const std::vector<Placement> b{{{300, 100}, c}};
  const std::vector<Placement> both{{{100, 100}, c}, {{300, 100}, c}};
  CHECK(set_coverage(env, both) == doctest::Approx(set_coverage(env, a) + set_coverage(env, b)));
  const std::vector<Placement> near{{{100, 100}, c}, {{120, 100}, c}};
  CHECK(set_coverage(env, near) < 2.0 * set_coverage(env, a));
}

TEST_CASE("obstacles block coverage") {
  const AgentClass c = make_agent_class(1.0, 0.01, 80.0);
  const Environment open(MissionSpace(square(0, 0, 200, 200), {}), 2.0, DensityField::uniform(1.0));
  const Environment walled(MissionSpace(square(0, 0, 200, 200), {square(110, 20, 120, 180)}), 2.0,
                           DensityField::uniform(1.0));
  const std::vector<Placement> p{{{100, 100}, c}};
  CHECK(set_coverage(walled, p) < set_coverage(open, p));
}

TEST_CASE("coverage converges under grid refinement") {
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const MissionSpace space(square(0, 0, 600, 600), {square(250, 250, 350, 330)});
  const std::vector<Placement> p{{{150, 150}, c}, {{450, 420}, c}};
  const double coarse = set_coverage(Environment(space, 10.0, DensityField::uniform(1.0)), p);
  const double fine = set_coverage(Environment(space, 5.0, DensityField::uniform(1.0)), p);
  CHECK(std::abs(coarse - fine) / fine < 0.01);
}

TEST_CASE("raster density") {
  // Left half weighted 1, right half 0.
  const DensityField d = DensityField::raster({0, 0}, 50.0, 2, 1, {1.0, 0.0});
  CHECK(d.at({10, 10}) == 1.0);
  CHECK(d.at({60, 10}) == 0.0);
  CHECK(d.at({500, 10}) == 0.0);
  const Environment env(MissionSpace(square(0, 0, 100, 50), {}), 5.0, d);
  CHECK(env.total_density() == doctest::Approx(2500.0));
}

TEST_CASE("infeasible agents are rejected") {
  const AgentClass c = make_agent_class(1.0, 0.01, 50.0);
  const Environment env(MissionSpace(square(0, 0, 100, 100), {square(40, 40, 60, 60)}), 5.0,
                        DensityField::uniform(1.0));
  const TeamState bad = team_of({{50, 50}}, {1.0}, c);
  const CostModel model = CostModel::make(1.0, env.total_density(), {c.gamma()});
  CHECK_THROWS_AS(evaluate_objective(env, bad, model), PreconditionError);
}
