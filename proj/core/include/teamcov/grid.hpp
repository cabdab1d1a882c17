#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "teamcov/geometry.hpp"

namespace teamcov {

using NodeIndex = std::uint32_t;

/// Midpoint-rule quadrature over a uniform Cartesian grid covering the
/// bounding box of the mission space. Node k sits at the center of its cell;
/// indices run row-major (x fastest), so any row-by-row scan yields sorted
/// index lists.
class QuadratureGrid {
 public:
  QuadratureGrid() = default;
  QuadratureGrid(const MissionSpace& space, double cell_size);

  Vec2 origin() const { return origin_; }
  double cell_size() const { return cell_; }
  double cell_area() const { return cell_ * cell_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }

  Vec2 node(std::size_t k) const {
    return {origin_.x + (static_cast<double>(k % nx_) + 0.5) * cell_,
            origin_.y + (static_cast<double>(k / nx_) + 0.5) * cell_};
  }
  bool in_omega(std::size_t k) const { return in_omega_[k] != 0; }
  bool in_feasible(std::size_t k) const { return in_feasible_[k] != 0; }

  /// Calls fn(node_index, distance) for every node within `radius` of
  /// `center`, in increasing index order.
  template <class Fn>
  void for_each_in_disk(Vec2 center, double radius, Fn&& fn) const;

  /// Index of the cell containing p, or size() when p is off the grid.
  std::size_t locate(Vec2 p) const;

 private:
  Vec2 origin_{};
  double cell_ = 0.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<char> in_omega_;
  std::vector<char> in_feasible_;
};

/// Event density R(x) >= 0. Either a constant, or a raster sampled at the
/// nearest cell (zero off the raster).
class DensityField {
 public:
  static DensityField uniform(double value);
  static DensityField raster(Vec2 origin, double cell, std::size_t nx, std::size_t ny,
                             std::vector<double> values);

  bool is_uniform() const { return values_.empty(); }
  double at(Vec2 p) const;

 private:
  double value_ = 1.0;
  Vec2 origin_{};
  double cell_ = 0.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<double> values_;
};

/// Everything the objective needs about the world: the mission space, its
/// quadrature grid and the density, plus the per-node mass R(x)*cell_area
/// (zero outside the outer polygon).
class Environment {
 public:
  Environment(MissionSpace space, double cell_size, DensityField density);

  const MissionSpace& space() const { return space_; }
  const QuadratureGrid& grid() const { return grid_; }
  const DensityField& density() const { return density_; }
  double node_mass(std::size_t k) const { return node_mass_[k]; }
  const std::vector<double>& node_masses() const { return node_mass_; }
  /// Integral of R over the outer polygon.
  double total_density() const { return total_density_; }

 private:
  MissionSpace space_;
  QuadratureGrid grid_;
  DensityField density_;
  std::vector<double> node_mass_;
  double total_density_ = 0.0;
};

template <class Fn>
void QuadratureGrid::for_each_in_disk(Vec2 center, double radius, Fn&& fn) const {
  if (size() == 0 || radius < 0.0) return;
  const double fy_lo = (center.y - radius - origin_.y) / cell_ - 0.5;
  const double fy_hi = (center.y + radius - origin_.y) / cell_ - 0.5;
  const long iy_lo = std::max(0L, static_cast<long>(std::ceil(fy_lo)));
  const long iy_hi = std::min(static_cast<long>(ny_) - 1, static_cast<long>(std::floor(fy_hi)));
  const double r2 = radius * radius;
  for (long iy = iy_lo; iy <= iy_hi; ++iy) {
    const double y = origin_.y + (static_cast<double>(iy) + 0.5) * cell_;
    const double dy = y - center.y;
    const double rem = r2 - dy * dy;
    if (rem < 0.0) continue;
    const double half = std::sqrt(rem);
    const double fx_lo = (center.x - half - origin_.x) / cell_ - 0.5;
    const double fx_hi = (center.x + half - origin_.x) / cell_ - 0.5;
    const long ix_lo = std::max(0L, static_cast<long>(std::ceil(fx_lo)));
    const long ix_hi = std::min(static_cast<long>(nx_) - 1, static_cast<long>(std::floor(fx_hi)));
    for (long ix = ix_lo; ix <= ix_hi; ++ix) {
      const double x = origin_.x + (static_cast<double>(ix) + 0.5) * cell_;
      const double dx = x - center.x;
      const double d2 = dx * dx + dy * dy;
      // The row bounds come from a rounded sqrt; re-check the exact distance.
      if (d2 > r2) continue;
      fn(static_cast<NodeIndex>(static_cast<std::size_t>(iy) * nx_ + static_cast<std::size_t>(ix)),
         std::sqrt(d2));
    }
  }
}

}  // namespace teamcov
