#include <cmath>

#include "doctest.h"
#include "teamcov/errors.hpp"
#include "teamcov/geometry.hpp"

using namespace teamcov;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

}  // namespace

TEST_CASE("orientation and signed area") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 0}, {0, -1}) == -1);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);
  const Polygon sq = square(0, 0, 2, 3);
  CHECK(signed_area(sq) == doctest::Approx(6.0));
  Polygon cw(sq.rbegin(), sq.rend());
  CHECK(signed_area(cw) == doctest::Approx(-6.0));
  CHECK(is_convex(sq));
  CHECK_FALSE(is_convex(Polygon{{0, 0}, {4, 0}, {1, 1}, {0, 4}}));
}

TEST_CASE("point in polygon and segment distance") {
  const Polygon sq = square(0, 0, 10, 10);
  CHECK(strictly_inside(sq, {5, 5}));
  CHECK_FALSE(strictly_inside(sq, {10, 5}));
  CHECK(inside_or_on(sq, {10, 5}));
  CHECK_FALSE(inside_or_on(sq, {10.1, 5}));
  CHECK(point_segment_distance({5, 3}, {0, 0}, {10, 0}) == doctest::Approx(3.0));
  CHECK(point_segment_distance({-3, 4}, {0, 0}, {10, 0}) == doctest::Approx(5.0));
  CHECK(boundary_distance(sq, {2, 5}) == doctest::Approx(2.0));
}

TEST_CASE("mission space validation") {
  CHECK_THROWS_AS(MissionSpace(Polygon{{0, 0}, {4, 0}, {1, 1}, {0, 4}}, {}), GeometryError);
  // Obstacle touching the outer boundary.
  CHECK_THROWS_AS(MissionSpace(square(0, 0, 10, 10), {square(0, 2, 3, 3)}), GeometryError);
  // Overlapping obstacles.
  CHECK_THROWS_AS(MissionSpace(square(0, 0, 10, 10), {square(2, 2, 5, 5), square(4, 4, 6, 6)}), GeometryError);
  CHECK_NOTHROW(MissionSpace(square(0, 0, 10, 10), {square(2, 2, 4, 4), square(6, 6, 8, 8)}));
  // Clockwise input is stored counterclockwise.
  const MissionSpace cw(Polygon{{0, 0}, {0, 10}, {10, 10}, {10, 0}}, {});
  CHECK(signed_area(cw.outer()) > 0.0);
}

TEST_CASE("feasibility and line of sight") {
  const MissionSpace space(square(0, 0, 10, 10), {square(4, 4, 6, 6)});
  CHECK(is_feasible(space, {1, 1}));
  CHECK_FALSE(is_feasible(space, {5, 5}));
  CHECK(is_feasible(space, {4, 5}));  // obstacle boundary is feasible
  CHECK_FALSE(is_feasible(space, {11, 5}));

  CHECK(line_of_sight(space, {1, 1}, {9, 1}));
  CHECK_FALSE(line_of_sight(space, {1, 5}, {9, 5}));
  CHECK_FALSE(line_of_sight(space, {2, 2}, {8, 8}));
  CHECK_FALSE(line_of_sight(space, {3, 3}, {7, 5}));
  // Touching the corner (4, 4) or running along an edge stays visible.
  CHECK(line_of_sight(space, {3, 5}, {5, 3}));
  CHECK(line_of_sight(space, {2, 4}, {8, 4}));
  CHECK(line_of_sight(space, {2, 8}, {6, 6}));
  CHECK_THROWS_AS(line_of_sight(space, {5, 5}, {1, 1}), PreconditionError);
}

TEST_CASE("projection onto the feasible region") {
  const MissionSpace space(square(0, 0, 10, 10), {square(4, 4, 6, 6)});
  const Vec2 a = project_to_feasible(space, {12, 5});
  CHECK(a.x == doctest::Approx(10.0));
  CHECK(a.y == doctest::Approx(5.0));
  const Vec2 b = project_to_feasible(space, {4.4, 5.0});
  CHECK(b.x == doctest::Approx(4.0));
  CHECK(b.y == doctest::Approx(5.0));
  const Vec2 c = project_to_feasible(space, {3, 3});
  CHECK(c == Vec2{3, 3});
  CHECK(is_feasible(space, project_to_feasible(space, {5.9, 5.5})));
  const Vec2 n = nudge_off_boundary(space, {4, 5}, 1e-3);
  CHECK(n.x == doctest::Approx(4 - 1e-3));
}
