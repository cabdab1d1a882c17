#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "teamcov/bounds.hpp"
#include "teamcov/errors.hpp"

using namespace teamcov;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

std::vector<Placement> place(const std::vector<Vec2>& pts, const AgentClass& c) {
  std::vector<Placement> out;
  for (Vec2 p : pts) out.push_back({p, c});
  return out;
}

}  // namespace

TEST_CASE("conventional and curvature bounds") {
  CHECK(bound_conventional(1) == 1.0);
  CHECK(bound_conventional(2) == doctest::Approx(0.75));
  CHECK(bound_conventional(7) == doctest::Approx(1.0 - std::pow(6.0 / 7.0, 7)));
  CHECK_THROWS_AS(bound_conventional(0), ParameterError);

  // Curvature 1 recovers the conventional bound, curvature 0 gives 1.
  CHECK(bound_from_curvature(1.0, 5, CurvatureKind::total) == doctest::Approx(bound_conventional(5)));
  CHECK(bound_from_curvature(0.0, 5, CurvatureKind::partial) == 1.0);
  CHECK(bound_from_curvature(1e-14, 5, CurvatureKind::partial) == doctest::Approx(1.0));
  CHECK(bound_from_curvature(0.4, 5, CurvatureKind::greedy) == doctest::Approx(1.0 - 0.4 * 0.8));
  // Decreasing in the curvature.
  CHECK(bound_from_curvature(0.3, 4, CurvatureKind::total) > bound_from_curvature(0.6, 4, CurvatureKind::total));
}

TEST_CASE("total curvature matches its definition") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 5.0, DensityField::uniform(1.0));
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const GroundSet ground = build_ground_set(env.space(), 3, 3);
  const double alpha = total_curvature(env, ground, c);
  CHECK(alpha > 0.0);
  CHECK(alpha < 1.0);

  const double all = set_coverage(env, place(ground.points, c));
  double ref = 0.0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    std::vector<Vec2> rest = ground.points;
    rest.erase(rest.begin() + static_cast<long>(i));
    const double marginal = all - set_coverage(env, place(rest, c));
    const double alone = set_coverage(env, place({ground.points[i]}, c));
    ref = std::max(ref, 1.0 - marginal / alone);
  }
  CHECK(alpha == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("partial curvature modes") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {square(120, 130, 180, 170)}), 6.0,
                        DensityField::uniform(1.0));
  const AgentClass c = make_agent_class(0.9, 0.02, 90.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 300.0);
  std::vector<Vec2> pts;
  while (pts.size() < 10) {
    const Vec2 p{u(rng), u(rng)};
    if (is_feasible(env.space(), p)) pts.push_back(p);
  }
  const std::vector<AgentClass> classes{c};
  const FootprintTable table(env, pts, classes);
  Roster roster;
  roster.add(c, 3);

  const PartialCurvature exact = partial_curvature(table, roster, PartialMode::exact);
  const PartialCurvature cons = partial_curvature(table, roster, PartialMode::conservative);
  CHECK(exact.mode == PartialMode::exact);
  CHECK(exact.evaluations > 0);
  CHECK(cons.mode == PartialMode::conservative);
  CHECK(cons.alpha >= exact.alpha - 1e-12);
  CHECK(exact.alpha <= total_curvature(table) + 1e-12);
  CHECK(partial_curvature(table, roster, PartialMode::automatic).mode == PartialMode::exact);
  CHECK(partial_curvature(table, roster, PartialMode::automatic, 1).mode == PartialMode::conservative);
  CHECK_THROWS_AS(partial_curvature(table, roster, PartialMode::exact, 1), BudgetExceeded);
}

TEST_CASE("bound report") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 6.0, DensityField::uniform(1.0));
  const AgentClass a = make_agent_class(1.0, 0.02, 90.0);
  const AgentClass b = make_agent_class(0.8, 0.01, 60.0);
  const GroundSet ground = build_ground_set(env.space(), 3, 3);

  Roster homog;
  homog.add(a, 3);
  const std::vector<AgentClass> ca{a};
  const FootprintTable ta(env, ground.points, ca);
  const GreedySolution sa = greedy_place(ta, homog);
  const BoundReport ra = compute_bound_report(ta, homog, sa);
  REQUIRE(ra.L_T);
  REQUIRE(ra.L_P);
  REQUIRE(ra.L_G);
  CHECK(*ra.L_C <= *ra.L_T + 1e-12);
  CHECK(*ra.L_T <= *ra.L_P + 1e-12);
  CHECK(ra.L_overall == doctest::Approx(std::max({*ra.L_C, *ra.L_T, *ra.L_P, *ra.L_G})));

  Roster mixed;
  mixed.add(a, 2);
  mixed.add(b, 1);
  const FootprintTable tm(env, ground.points, mixed.classes);
  const GreedySolution sm = greedy_place(tm, mixed);
  const BoundReport rm = compute_bound_report(tm, mixed, sm);
  CHECK_FALSE(rm.homogeneous);
  CHECK_FALSE(rm.L_T);
  CHECK_FALSE(rm.alpha_T);
  CHECK(rm.L_P);
  CHECK_FALSE(rm.method_notes.empty());
}

TEST_CASE("post-ascent bound") {
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 6.0, DensityField::uniform(1.0));
  const AgentClass a = make_agent_class(1.0, 0.02, 90.0);
  const GroundSet ground = build_ground_set(env.space(), 3, 2);
  const std::vector<Placement> team{{{80, 150}, a}, {{220, 150}, a}};
  const PostBound pb = post_pga_bound(env, ground, team);
  CHECK(pb.ground2_size == ground.size() + 2);
  CHECK(pb.pga_value == doctest::Approx(set_coverage(env, team)));
  CHECK(pb.L_prime == doctest::Approx(pb.L2 * pb.pga_value / pb.greedy2_value));
  CHECK_THROWS_AS(post_pga_bound(env, ground, std::vector<Placement>{}), PreconditionError);
}
