#pragma once

#include <span>
#include <vector>

#include "teamcov/geometry.hpp"
#include "teamcov/grid.hpp"

namespace teamcov {

/// Straight piece of the shadow boundary cast by an occluding obstacle vertex.
/// Points on it are rho(r) = vertex + r * direction for r in [0, length].
struct ImpactSegment {
  Vec2 vertex;
  /// Unit vector (vertex - anchor) / anchor_distance.
  Vec2 direction;
  double length = 0.0;
  /// Direction angle of the segment measured from the +x axis, in (-pi, pi].
  double angle = 0.0;
  /// Unit normal pointing from the shadow into the visible side.
  Vec2 normal;
  double anchor_distance = 0.0;

  Vec2 at(double r) const { return vertex + r * direction; }
};

/// The part of the sensing disk around `anchor` that is in line of sight,
/// sampled on quadrature nodes. `nodes` is sorted ascending and
/// `distances[k]` is the anchor distance of `nodes[k]`.
struct VisibilityRegion {
  Vec2 anchor;
  double radius = 0.0;
  std::vector<NodeIndex> nodes;
  std::vector<double> distances;
  std::vector<ImpactSegment> impact_segments;

  bool contains_node(NodeIndex k) const;
  /// Position of node k in `nodes`, or nodes.size() when absent.
  std::size_t find(NodeIndex k) const;
};

/// Exact predicate behind the mask: x feasible, within range, in sight.
bool visible_from(const MissionSpace& space, Vec2 anchor, double radius, Vec2 x);

/// Throws PreconditionError when s is infeasible or delta is not positive.
VisibilityRegion visibility_region(const MissionSpace& space, Vec2 s, double delta,
                                   const QuadratureGrid& grid, bool with_impact_segments = true);

/// Shadow-boundary segments cast by visible, locally occluding obstacle
/// vertices within range. Segments shorter than `min_length` are dropped.
std::vector<ImpactSegment> extract_impact_segments(const MissionSpace& space, Vec2 s, double delta,
                                                   double min_length = 1e-6);

}  // namespace teamcov
