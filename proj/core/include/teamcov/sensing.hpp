#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "teamcov/geometry.hpp"
#include "teamcov/visibility.hpp"

namespace teamcov {

/// Sensing parameters shared by every agent of one class.
///   p0     - sensing capacity, detection probability at zero range, in (0, 1]
///   lambda - exponential decay rate (1 / length)
///   delta  - sensing range (length)
///   w2     - cost weight; the agent cost is w2 * kappa
struct AgentClass {
  double p0 = 1.0;
  double lambda = 0.012;
  double delta = 200.0;
  double w2 = 1.0;

  /// Integral of the detection kernel over the sensing disk (closed form).
  double kappa() const;
  /// Agent cost w2 * kappa.
  double gamma() const { return w2 * kappa(); }

  friend bool operator==(const AgentClass&, const AgentClass&) = default;
};

/// Validates the parameters. A cost weight above one is accepted with a warning.
AgentClass make_agent_class(double p0, double lambda, double delta, double w2 = 1.0);

/// p0 * exp(-lambda * |x - s|), ignoring range and obstacles.
double detection_probability(const AgentClass& cls, Vec2 x, Vec2 s);

/// t * p0 * exp(-lambda * |x - s|) if x is visible from the region's anchor,
/// else zero. `s` is taken from `vis.anchor`.
double constrained_detection(const AgentClass& cls, const VisibilityRegion& vis,
                             const MissionSpace& space, Vec2 x, double t);

/// Same, for a quadrature node of the grid the region was built on.
double constrained_detection(const AgentClass& cls, const VisibilityRegion& vis, NodeIndex node,
                             double t);

double sensing_capability(const AgentClass& cls);

/// beta = ((1 - w1) / w1) * total_density / sum_gamma.
double normalization_beta(double w1, double total_density, double sum_gamma);

/// Weights and per-agent costs of the objective H(s,t) = coverage - beta * sum(gamma_i t_i).
struct CostModel {
  double w1 = 1.0;
  double total_density = 0.0;
  std::vector<double> gammas;
  double beta = 0.0;

  static CostModel make(double w1, double total_density, std::vector<double> gammas);
  double sum_gamma() const;
  /// beta * sum_i gamma_i t_i
  double cost(std::span<const double> memberships) const;
};

/// Multiset of agent classes available for deployment. Classes are kept in
/// insertion order; every count is at least one.
struct Roster {
  std::vector<AgentClass> classes;
  std::vector<std::size_t> counts;

  void add(const AgentClass& cls, std::size_t count);
  std::size_t size() const;
  bool homogeneous() const { return classes.size() == 1; }
  /// One entry per agent, class by class.
  std::vector<AgentClass> agents() const;
  /// Class index of each agent in agents().
  std::vector<std::size_t> agent_class_indices() const;
  std::size_t index_of(const AgentClass& cls) const;
};

/// Positions, relaxed memberships in [0, 1] and the class of each agent.
struct TeamState {
  std::vector<Vec2> positions;
  std::vector<double> memberships;
  std::vector<AgentClass> classes;

  std::size_t size() const { return positions.size(); }
  /// Throws PreconditionError when lengths disagree, a membership leaves
  /// [0, 1] or a position is infeasible.
  void validate(const MissionSpace& space) const;
  std::vector<double> gammas() const;
};

}  // namespace teamcov
