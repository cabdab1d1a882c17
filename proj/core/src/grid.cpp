#include "teamcov/grid.hpp"

#include "teamcov/errors.hpp"

namespace teamcov {

QuadratureGrid::QuadratureGrid(const MissionSpace& space, double cell_size) : cell_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw ParameterError("grid cell size must be positive");
  }
  const BoundingBox& bb = space.bounds();
  origin_ = bb.lo;
  // Tolerate widths that are an integer multiple of the cell up to rounding.
  nx_ = static_cast<std::size_t>(std::max(1.0, std::ceil(bb.width() / cell_ - 1e-9)));
  ny_ = static_cast<std::size_t>(std::max(1.0, std::ceil(bb.height() / cell_ - 1e-9)));
  in_omega_.assign(size(), 0);
  in_feasible_.assign(size(), 0);
  for (std::size_t k = 0; k < size(); ++k) {
    const Vec2 p = node(k);
    if (in_outer(space, p)) {
      in_omega_[k] = 1;
      in_feasible_[k] = is_feasible(space, p) ? 1 : 0;
    }
  }
}

std::size_t QuadratureGrid::locate(Vec2 p) const {
  const double fx = (p.x - origin_.x) / cell_;
  const double fy = (p.y - origin_.y) / cell_;
  if (fx < 0.0 || fy < 0.0) return size();
  const auto ix = static_cast<std::size_t>(fx);
  const auto iy = static_cast<std::size_t>(fy);
  if (ix >= nx_ || iy >= ny_) return size();
  return iy * nx_ + ix;
}

DensityField DensityField::uniform(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError("uniform density must be positive and finite");
  }
  DensityField f;
  f.value_ = value;
  return f;
}

DensityField DensityField::raster(Vec2 origin, double cell, std::size_t nx, std::size_t ny,
                                  std::vector<double> values) {
  if (!(cell > 0.0) || nx == 0 || ny == 0 || values.size() != nx * ny) {
    throw ParameterError("density raster dimensions do not match its values");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("density values must be >= 0");
  }
  DensityField f;
  f.origin_ = origin;
  f.cell_ = cell;
  f.nx_ = nx;
  f.ny_ = ny;
  f.values_ = std::move(values);
  return f;
}

double DensityField::at(Vec2 p) const {
  if (is_uniform()) return value_;
  const double fx = (p.x - origin_.x) / cell_;
  const double fy = (p.y - origin_.y) / cell_;
  if (fx < 0.0 || fy < 0.0) return 0.0;
  const auto ix = static_cast<std::size_t>(fx);
  const auto iy = static_cast<std::size_t>(fy);
  if (ix >= nx_ || iy >= ny_) return 0.0;
  return values_[iy * nx_ + ix];
}

Environment::Environment(MissionSpace space, double cell_size, DensityField density)
    : space_(std::move(space)), grid_(space_, cell_size), density_(std::move(density)) {
  node_mass_.assign(grid_.size(), 0.0);
  const double area = grid_.cell_area();
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (!grid_.in_omega(k)) continue;
    node_mass_[k] = density_.at(grid_.node(k)) * area;
    total_density_ += node_mass_[k];
  }
  if (!(total_density_ > 0.0)) throw ParameterError("density integrates to zero over the space");
}

}  // namespace teamcov
