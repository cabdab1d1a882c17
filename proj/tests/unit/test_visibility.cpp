#include <cmath>

#include "doctest.h"
#include "teamcov/errors.hpp"
#include "teamcov/grid.hpp"
#include "teamcov/visibility.hpp"

using namespace teamcov;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

}  // namespace

TEST_CASE("visibility mask agrees with the exact predicate") {
  const MissionSpace space(square(0, 0, 100, 100), {square(40, 40, 60, 60)});
  const QuadratureGrid grid(space, 2.0);
  const Vec2 s{20, 50};
  const VisibilityRegion vis = visibility_region(space, s, 45.0, grid);
  REQUIRE_FALSE(vis.nodes.empty());
  CHECK(std::is_sorted(vis.nodes.begin(), vis.nodes.end()));
  for (std::size_t k = 0; k < vis.nodes.size(); ++k) {
    const Vec2 x = grid.node(vis.nodes[k]);
    CHECK(is_feasible(space, x));
    CHECK(vis.distances[k] <= 45.0);
    CHECK(vis.distances[k] == doctest::Approx(distance(x, s)));
  }
  std::size_t agree = 0;
  std::size_t total = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (distance(grid.node(k), s) > 45.0) continue;
    ++total;
    agree += visible_from(space, s, 45.0, grid.node(k)) == vis.contains_node(static_cast<NodeIndex>(k));
  }
  CHECK(agree == total);
  // Directly behind the obstacle is hidden.
  CHECK_FALSE(visible_from(space, s, 45.0, {62, 50}));
  CHECK(visible_from(space, s, 45.0, {30, 80}));
}

TEST_CASE("impact segments of a square obstacle") {
  const MissionSpace space(square(0, 0, 100, 100), {square(40, 40, 60, 60)});
  const Vec2 s{20, 50};
  const auto segs = extract_impact_segments(space, s, 200.0);
  // The two left corners cast the shadow edges.
  REQUIRE(segs.size() == 2);
  for (const ImpactSegment& seg : segs) {
    CHECK(seg.vertex.x == doctest::Approx(40.0));
    CHECK(norm(seg.direction) == doctest::Approx(1.0));
    CHECK(seg.anchor_distance == doctest::Approx(distance(seg.vertex, s)));
    // The far end stops on the outer boundary.
    CHECK(seg.at(seg.length).x == doctest::Approx(100.0));
    // The normal points away from the shadow, toward the obstacle's outside.
    const Vec2 probe = seg.at(0.5 * seg.length) + 1.0 * seg.normal;
    CHECK(visible_from(space, s, 200.0, probe));
  }
  // Out of range: no segments.
  CHECK(extract_impact_segments(space, s, 10.0).empty());
}

TEST_CASE("visibility preconditions") {
  const MissionSpace space(square(0, 0, 100, 100), {square(40, 40, 60, 60)});
  const QuadratureGrid grid(space, 5.0);
  CHECK_THROWS_AS(visibility_region(space, {50, 50}, 10.0, grid), PreconditionError);
  CHECK_THROWS_AS(visibility_region(space, {10, 10}, 0.0, grid), PreconditionError);
}
