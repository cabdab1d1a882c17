#include "teamcov/visibility.hpp"

#include <algorithm>
#include <limits>

#include "teamcov/errors.hpp"

namespace teamcov {
namespace {

// Smallest parameter t in [0, 1] after which the segment a-b runs through the
// open interior of `poly`; 1 when it never does.
double first_entry(const Polygon& poly, Vec2 a, Vec2 b) {
  std::vector<double> params{0.0, 1.0};
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return 1.0;
  auto param = [&](Vec2 p) { return std::clamp(dot(p - a, d) / len2, 0.0, 1.0); };
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 c = poly[k];
    const Vec2 e = poly[(k + 1) % n];
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, e);
    const int o3 = orientation(c, e, a);
    const int o4 = orientation(c, e, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) {
      const Vec2 ce = e - c;
      const double denom = cross(d, ce);
      if (denom != 0.0) params.push_back(std::clamp(cross(c - a, ce) / denom, 0.0, 1.0));
      continue;
    }
    if (o1 == 0 && on_segment(c, a, b)) params.push_back(param(c));
    if (o2 == 0 && on_segment(e, a, b)) params.push_back(param(e));
    if (o3 == 0 && on_segment(a, c, e)) params.push_back(0.0);
    if (o4 == 0 && on_segment(b, c, e)) params.push_back(1.0);
  }
  std::sort(params.begin(), params.end());
  for (std::size_t k = 0; k + 1 < params.size(); ++k) {
    if (params[k + 1] - params[k] <= 1e-12) continue;
    const Vec2 mid = a + (0.5 * (params[k] + params[k + 1])) * d;
    if (strictly_inside(poly, mid)) return params[k];
  }
  return 1.0;
}

// Largest t in [0, max_len] with origin + t*dir inside the convex outer polygon.
double outer_exit(const Polygon& outer, Vec2 origin, Vec2 dir, double max_len) {
  double t_max = max_len;
  const std::size_t n = outer.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = outer[k];
    const Vec2 edge = outer[(k + 1) % n] - a;
    const double f0 = cross(edge, origin - a);
    const double f1 = cross(edge, dir);
    if (f1 < 0.0) t_max = std::min(t_max, std::max(0.0, f0 / -f1));
  }
  return t_max;
}

}  // namespace

bool VisibilityRegion::contains_node(NodeIndex k) const {
  return std::binary_search(nodes.begin(), nodes.end(), k);
}

std::size_t VisibilityRegion::find(NodeIndex k) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), k);
  return (it != nodes.end() && *it == k) ? static_cast<std::size_t>(it - nodes.begin())
                                         : nodes.size();
}

bool visible_from(const MissionSpace& space, Vec2 anchor, double radius, Vec2 x) {
  if (distance(anchor, x) > radius) return false;
  if (!is_feasible(space, x)) return false;
  return segment_clear(space, anchor, x);
}

VisibilityRegion visibility_region(const MissionSpace& space, Vec2 s, double delta,
                                   const QuadratureGrid& grid, bool with_impact_segments) {
  if (!(delta > 0.0)) throw PreconditionError("visibility_region: range must be positive");
  if (!is_feasible(space, s)) {
    throw PreconditionError("visibility_region: anchor outside the feasible region");
  }
  VisibilityRegion region;
  region.anchor = s;
  region.radius = delta;
  const bool blank = space.blank();
  grid.for_each_in_disk(s, delta, [&](NodeIndex k, double d) {
    if (!grid.in_feasible(k)) return;
    if (!blank && !segment_clear(space, s, grid.node(k))) return;
    region.nodes.push_back(k);
    region.distances.push_back(d);
  });
  if (with_impact_segments) region.impact_segments = extract_impact_segments(space, s, delta);
  return region;
}

std::vector<ImpactSegment> extract_impact_segments(const MissionSpace& space, Vec2 s, double delta,
                                                   double min_length) {
  std::vector<ImpactSegment> out;
  if (!is_feasible(space, s)) {
    throw PreconditionError("extract_impact_segments: anchor outside the feasible region");
  }
  for (const Polygon& poly : space.obstacles()) {
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2 v = poly[j];
      const double dist = distance(v, s);
      if (dist <= kGeomEps || dist > delta) continue;
      const Vec2 u = (1.0 / dist) * (v - s);
      const Vec2 prev = poly[(j + n - 1) % n];
      const Vec2 next = poly[(j + 1) % n];
      const int side_prev = orientation(s, v, prev);
      const int side_next = orientation(s, v, next);
      if (side_prev * side_next < 0) continue;
      if (side_prev == 0 && side_next == 0) continue;
      // An edge running on ahead along the ray is a wall, not a shadow edge.
      if (side_prev == 0 && dot(prev - v, u) > 0.0) continue;
      if (side_next == 0 && dot(next - v, u) > 0.0) continue;
      if (!segment_clear(space, s, v)) continue;

      const double reach = outer_exit(space.outer(), v, u, delta - dist);
      if (reach < min_length) continue;
      const Vec2 end = v + reach * u;
      double z = reach;
      const auto& obstacles = space.obstacles();
      for (std::size_t k = 0; k < obstacles.size(); ++k) {
        const BoundingBox& box = space.obstacle_bounds(k);
        const BoundingBox seg{{std::min(v.x, end.x), std::min(v.y, end.y)},
                              {std::max(v.x, end.x), std::max(v.y, end.y)}};
        if (seg.lo.x > box.hi.x + kGeomEps || box.lo.x > seg.hi.x + kGeomEps ||
            seg.lo.y > box.hi.y + kGeomEps || box.lo.y > seg.hi.y + kGeomEps) {
          continue;
        }
        z = std::min(z, reach * first_entry(obstacles[k], v, end));
      }
      if (z < min_length) continue;

      const int side = side_prev != 0 ? side_prev : side_next;
      ImpactSegment seg;
      seg.vertex = v;
      seg.direction = u;
      seg.length = z;
      seg.angle = std::atan2(u.y, u.x);
      // The obstacle lies on the `side` of the ray; the visible side is opposite.
      seg.normal = side > 0 ? Vec2{u.y, -u.x} : Vec2{-u.y, u.x};
      seg.anchor_distance = dist;
      out.push_back(seg);
    }
  }
  return out;
}

}  // namespace teamcov
