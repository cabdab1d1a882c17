#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace teamcov {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double k) {
    x *= k;
    y *= k;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Geometric tolerance in length units for on-boundary / collinear decisions.
inline constexpr double kGeomEps = 1e-9;

/// Closed polygon stored without repeating the first vertex.
using Polygon = std::vector<Vec2>;

struct BoundingBox {
  Vec2 lo;
  Vec2 hi;

  bool contains(Vec2 p, double pad = 0.0) const {
    return p.x >= lo.x - pad && p.x <= hi.x + pad && p.y >= lo.y - pad && p.y <= hi.y + pad;
  }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

BoundingBox bounding_box(std::span<const Vec2> pts);

/// Positive for counterclockwise order.
double signed_area(std::span<const Vec2> poly);
bool is_convex(std::span<const Vec2> poly);
bool is_simple(std::span<const Vec2> poly);

/// -1, 0, +1 orientation of c relative to the directed line a->b. Collinear
/// when c lies within kGeomEps of the line.
int orientation(Vec2 a, Vec2 b, Vec2 c);

/// Closest point to p on segment [a, b].
Vec2 closest_on_segment(Vec2 p, Vec2 a, Vec2 b);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
bool on_segment(Vec2 p, Vec2 a, Vec2 b, double tol = kGeomEps);

/// Crossing-number test; points on the boundary may land on either side, so
/// callers that care about the boundary check it separately.
bool crossing_inside(std::span<const Vec2> poly, Vec2 p);
double boundary_distance(std::span<const Vec2> poly, Vec2 p);
bool strictly_inside(std::span<const Vec2> poly, Vec2 p, double tol = kGeomEps);
bool inside_or_on(std::span<const Vec2> poly, Vec2 p, double tol = kGeomEps);

/// Convex outer polygon with polygonal obstacles strictly inside it. The
/// feasible region is the outer polygon minus the open obstacle interiors.
/// Immutable after construction; all vertex lists are stored counterclockwise.
class MissionSpace {
 public:
  MissionSpace() = default;
  MissionSpace(Polygon outer, std::vector<Polygon> obstacles);

  const Polygon& outer() const { return outer_; }
  const std::vector<Polygon>& obstacles() const { return obstacles_; }
  const BoundingBox& bounds() const { return bounds_; }
  const BoundingBox& obstacle_bounds(std::size_t k) const { return obstacle_boxes_[k]; }
  double diameter() const;
  bool blank() const { return obstacles_.empty(); }

 private:
  Polygon outer_;
  std::vector<Polygon> obstacles_;
  std::vector<BoundingBox> obstacle_boxes_;
  BoundingBox bounds_{};
};

bool in_outer(const MissionSpace& space, Vec2 x);
bool is_feasible(const MissionSpace& space, Vec2 x);

/// True iff the closed segment a-b stays in the feasible region. Grazing an
/// obstacle vertex or sliding along an obstacle edge counts as visible.
/// Throws PreconditionError when either endpoint is infeasible.
bool line_of_sight(const MissionSpace& space, Vec2 a, Vec2 b);

/// line_of_sight without the endpoint feasibility check; used on hot paths
/// where both endpoints are already known to be feasible.
bool segment_clear(const MissionSpace& space, Vec2 a, Vec2 b);

/// Euclidean projection onto the feasible region. Ties go to the lowest
/// obstacle index, then the lowest edge index.
Vec2 project_to_feasible(const MissionSpace& space, Vec2 x);

/// Moves a point lying within `offset` of an obstacle boundary by `offset`
/// along the outward boundary normal. Other points are returned unchanged.
Vec2 nudge_off_boundary(const MissionSpace& space, Vec2 x, double offset = 1e-6);

}  // namespace teamcov
