#include "teamcov/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "teamcov/errors.hpp"

namespace teamcov {
namespace {

Polygon normalized(Polygon poly, const char* what) {
  if (poly.size() >= 2 && poly.front() == poly.back()) poly.pop_back();
  if (poly.size() < 3) {
    throw GeometryError(std::string(what) + " needs at least three distinct vertices");
  }
  for (const Vec2& v : poly) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw GeometryError(std::string(what) + " has a non-finite coordinate");
    }
  }
  const double area = signed_area(poly);
  if (std::abs(area) <= kGeomEps) {
    throw GeometryError(std::string(what) + " has zero area");
  }
  if (area < 0.0) std::reverse(poly.begin(), poly.end());
  return poly;
}

// Outward unit normal of edge a->b of a counterclockwise polygon.
Vec2 outward_normal(Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len = norm(d);
  return len > 0.0 ? Vec2{d.y / len, -d.x / len} : Vec2{};
}

bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
         (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d));
}

bool segments_cross_properly(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  return orientation(a, b, c) * orientation(a, b, d) < 0 &&
         orientation(c, d, a) * orientation(c, d, b) < 0;
}

bool boxes_overlap(const BoundingBox& a, const BoundingBox& b, double pad) {
  return a.lo.x <= b.hi.x + pad && b.lo.x <= a.hi.x + pad && a.lo.y <= b.hi.y + pad &&
         b.lo.y <= a.hi.y + pad;
}

// Whether the closed segment a-b enters the open interior of `poly`.
bool segment_enters(const Polygon& poly, const BoundingBox& box, Vec2 a, Vec2 b) {
  const BoundingBox seg{{std::min(a.x, b.x), std::min(a.y, b.y)},
                        {std::max(a.x, b.x), std::max(a.y, b.y)}};
  if (!boxes_overlap(seg, box, kGeomEps)) return false;

  thread_local std::vector<double> contacts;
  contacts.clear();
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  auto param = [&](Vec2 p) { return std::clamp(dot(p - a, d) / len2, 0.0, 1.0); };

  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 c = poly[k];
    const Vec2 e = poly[(k + 1) % n];
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, e);
    const int o3 = orientation(c, e, a);
    const int o4 = orientation(c, e, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment(c, a, b)) contacts.push_back(param(c));
    if (o2 == 0 && on_segment(e, a, b)) contacts.push_back(param(e));
    if (o3 == 0 && on_segment(a, c, e)) contacts.push_back(0.0);
    if (o4 == 0 && on_segment(b, c, e)) contacts.push_back(1.0);
  }
  if (contacts.empty()) return false;

  contacts.push_back(0.0);
  contacts.push_back(1.0);
  std::sort(contacts.begin(), contacts.end());
  for (std::size_t k = 0; k + 1 < contacts.size(); ++k) {
    if (contacts[k + 1] - contacts[k] <= 1e-12) continue;
    const Vec2 mid = a + (0.5 * (contacts[k] + contacts[k + 1])) * d;
    if (strictly_inside(poly, mid)) return true;
  }
  return false;
}

bool feasible_region_connected(const MissionSpace& space) {
  constexpr int kRes = 512;
  const BoundingBox& bb = space.bounds();
  const double hx = bb.width() / kRes;
  const double hy = bb.height() / kRes;
  std::vector<char> free(static_cast<std::size_t>(kRes) * kRes, 0);
  std::size_t total = 0;
  std::size_t seed = free.size();
  for (int j = 0; j < kRes; ++j) {
    for (int i = 0; i < kRes; ++i) {
      const Vec2 p{bb.lo.x + (i + 0.5) * hx, bb.lo.y + (j + 0.5) * hy};
      if (is_feasible(space, p)) {
        const std::size_t idx = static_cast<std::size_t>(j) * kRes + i;
        free[idx] = 1;
        ++total;
        if (seed == free.size()) seed = idx;
      }
    }
  }
  if (total == 0) return false;
  std::size_t reached = 0;
  std::deque<std::size_t> queue{seed};
  free[seed] = 2;
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    ++reached;
    const int i = static_cast<int>(idx % kRes);
    const int j = static_cast<int>(idx / kRes);
    const int di[] = {1, -1, 0, 0};
    const int dj[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int ni = i + di[k];
      const int nj = j + dj[k];
      if (ni < 0 || nj < 0 || ni >= kRes || nj >= kRes) continue;
      const std::size_t nidx = static_cast<std::size_t>(nj) * kRes + ni;
      if (free[nidx] == 1) {
        free[nidx] = 2;
        queue.push_back(nidx);
      }
    }
  }
  return reached == total;
}

}  // namespace

BoundingBox bounding_box(std::span<const Vec2> pts) {
  BoundingBox box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
                  {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const Vec2& p : pts) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

double signed_area(std::span<const Vec2> poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) acc += cross(poly[k], poly[(k + 1) % n]);
  return 0.5 * acc;
}

bool is_convex(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  const double sign = signed_area(poly) >= 0.0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = poly[k];
    const Vec2 b = poly[(k + 1) % n];
    const Vec2 c = poly[(k + 2) % n];
    if (sign * orientation(a, b, c) < 0) return false;
  }
  return true;
}

bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (distance(a, b) <= kGeomEps) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Vec2 c = poly[j];
      const Vec2 d = poly[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges may only share their common vertex.
        const Vec2 shared = (j == i + 1) ? b : a;
        const Vec2 other_ab = (j == i + 1) ? a : b;
        const Vec2 other_cd = (j == i + 1) ? d : c;
        if (orientation(other_ab, shared, other_cd) == 0 &&
            dot(other_ab - shared, other_cd - shared) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) return false;
    }
  }
  return true;
}

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  if (len == 0.0) return 0;
  const double cr = cross(ab, c - a);
  if (std::abs(cr) <= kGeomEps * len) return 0;
  return cr > 0.0 ? 1 : -1;
}

Vec2 closest_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return a + t * d;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  return distance(p, closest_on_segment(p, a, b));
}

bool on_segment(Vec2 p, Vec2 a, Vec2 b, double tol) {
  return point_segment_distance(p, a, b) <= tol;
}

bool crossing_inside(std::span<const Vec2> poly, Vec2 p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside;
}

double boundary_distance(std::span<const Vec2> poly, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    best = std::min(best, point_segment_distance(p, poly[k], poly[(k + 1) % n]));
  }
  return best;
}

bool strictly_inside(std::span<const Vec2> poly, Vec2 p, double tol) {
  return crossing_inside(poly, p) && boundary_distance(poly, p) > tol;
}

bool inside_or_on(std::span<const Vec2> poly, Vec2 p, double tol) {
  return crossing_inside(poly, p) || boundary_distance(poly, p) <= tol;
}

MissionSpace::MissionSpace(Polygon outer, std::vector<Polygon> obstacles)
    : outer_(normalized(std::move(outer), "outer polygon")) {
  if (!is_convex(outer_)) throw GeometryError("outer polygon must be convex");
  bounds_ = bounding_box(outer_);

  obstacles_.reserve(obstacles.size());
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const std::string what = "obstacle " + std::to_string(k);
    Polygon poly = normalized(std::move(obstacles[k]), what.c_str());
    if (!is_simple(poly)) throw GeometryError(what + " is not a simple polygon");
    for (const Vec2& v : poly) {
      if (!crossing_inside(outer_, v) || boundary_distance(outer_, v) <= kGeomEps) {
        throw GeometryError(what + " is not strictly inside the outer polygon");
      }
    }
    obstacle_boxes_.push_back(bounding_box(poly));
    obstacles_.push_back(std::move(poly));
  }

  bool touching = false;
  for (std::size_t a = 0; a < obstacles_.size(); ++a) {
    for (std::size_t b = a + 1; b < obstacles_.size(); ++b) {
      if (!boxes_overlap(obstacle_boxes_[a], obstacle_boxes_[b], kGeomEps)) continue;
      const Polygon& pa = obstacles_[a];
      const Polygon& pb = obstacles_[b];
      const auto overlap_error = [&] {
        return GeometryError("obstacles " + std::to_string(a) + " and " + std::to_string(b) +
                             " overlap");
      };
      for (std::size_t i = 0; i < pa.size(); ++i) {
        const Vec2 p0 = pa[i];
        const Vec2 p1 = pa[(i + 1) % pa.size()];
        if (strictly_inside(pb, p0) || strictly_inside(pb, 0.5 * (p0 + p1))) throw overlap_error();
        for (std::size_t j = 0; j < pb.size(); ++j) {
          const Vec2 q0 = pb[j];
          const Vec2 q1 = pb[(j + 1) % pb.size()];
          if (segments_cross_properly(p0, p1, q0, q1)) throw overlap_error();
          if (segments_touch(p0, p1, q0, q1)) touching = true;
        }
      }
      for (std::size_t j = 0; j < pb.size(); ++j) {
        const Vec2 q0 = pb[j];
        const Vec2 q1 = pb[(j + 1) % pb.size()];
        if (strictly_inside(pa, q0) || strictly_inside(pa, 0.5 * (q0 + q1))) throw overlap_error();
      }
    }
  }
  // Pairwise separated obstacles inside a convex region always leave it
  // connected; touching ones can enclose pockets.
  if (touching && !feasible_region_connected(*this)) {
    throw GeometryError("feasible region is not connected");
  }
}

double MissionSpace::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < outer_.size(); ++i) {
    for (std::size_t j = i + 1; j < outer_.size(); ++j) {
      best = std::max(best, distance(outer_[i], outer_[j]));
    }
  }
  return best;
}

bool in_outer(const MissionSpace& space, Vec2 x) {
  const Polygon& outer = space.outer();
  const std::size_t n = outer.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = outer[k];
    const Vec2 b = outer[(k + 1) % n];
    if (orientation(a, b, x) < 0) return false;
  }
  return true;
}

bool is_feasible(const MissionSpace& space, Vec2 x) {
  if (!in_outer(space, x)) return false;
  const auto& obstacles = space.obstacles();
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    if (!space.obstacle_bounds(k).contains(x)) continue;
    if (strictly_inside(obstacles[k], x)) return false;
  }
  return true;
}

bool segment_clear(const MissionSpace& space, Vec2 a, Vec2 b) {
  if (distance(a, b) <= kGeomEps) return true;
  const auto& obstacles = space.obstacles();
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    if (segment_enters(obstacles[k], space.obstacle_bounds(k), a, b)) return false;
  }
  return true;
}

bool line_of_sight(const MissionSpace& space, Vec2 a, Vec2 b) {
  if (!is_feasible(space, a) || !is_feasible(space, b)) {
    throw PreconditionError("line_of_sight: endpoint outside the feasible region");
  }
  return segment_clear(space, a, b);
}

Vec2 project_to_feasible(const MissionSpace& space, Vec2 x) {
  if (is_feasible(space, x)) return x;
  double best = std::numeric_limits<double>::infinity();
  Vec2 result = x;
  auto scan = [&](const Polygon& poly) {
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 q = closest_on_segment(x, poly[k], poly[(k + 1) % n]);
      const double d = distance(x, q);
      if (d < best - 1e-12) {
        best = d;
        result = q;
      }
    }
  };
  if (!in_outer(space, x)) {
    scan(space.outer());
    return result;
  }
  for (const Polygon& obstacle : space.obstacles()) scan(obstacle);
  return result;
}

Vec2 nudge_off_boundary(const MissionSpace& space, Vec2 x, double offset) {
  double best = std::numeric_limits<double>::infinity();
  Vec2 normal{};
  for (const Polygon& poly : space.obstacles()) {
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 a = poly[k];
      const Vec2 b = poly[(k + 1) % n];
      const Vec2 q = closest_on_segment(x, a, b);
      const double d = distance(x, q);
      if (d > offset || d > best + 1e-15) continue;
      Vec2 dir = outward_normal(a, b);
      if (distance(q, a) <= kGeomEps) {
        dir = dir + outward_normal(poly[(k + n - 1) % n], a);
      } else if (distance(q, b) <= kGeomEps) {
        dir = dir + outward_normal(b, poly[(k + 2) % n]);
      }
      const double len = norm(dir);
      if (len == 0.0) continue;
      if (d < best - 1e-15) {
        best = d;
        normal = (1.0 / len) * dir;
      }
    }
  }
  if (!std::isfinite(best)) return x;
  const Vec2 moved = x + offset * normal;
  return is_feasible(space, moved) ? moved : x;
}

}  // namespace teamcov
