#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "teamcov/grid.hpp"
#include "teamcov/sensing.hpp"
#include "teamcov/visibility.hpp"

namespace teamcov {

struct ObjectiveBreakdown {
  double coverage = 0.0;  ///< H(s)
  double cost = 0.0;      ///< C(t)
  double total = 0.0;     ///< H(s, t) = coverage - cost
};

/// One agent of a given class placed at a point, fully active (t = 1).
struct Placement {
  Vec2 point;
  AgentClass cls;
};

/// 1 - prod(1 - p_i). An empty list gives 0.
double joint_detection(std::span<const double> probabilities);

/// Joint detection at a quadrature node for a team whose visibility regions
/// were built on the same grid.
double joint_detection(const TeamState& team, std::span<const VisibilityRegion> regions,
                       NodeIndex node);

/// Visibility regions for every agent (impact segments included when asked).
std::vector<VisibilityRegion> team_regions(const Environment& env, const TeamState& team,
                                           bool with_impact_segments = false);

/// Per-node miss probability prod_i (1 - pbar_i(x)).
std::vector<double> miss_field(const Environment& env, const TeamState& team,
                               std::span<const VisibilityRegion> regions);

/// H(s,t) split into coverage and cost. Throws PreconditionError naming the
/// first infeasible agent.
ObjectiveBreakdown evaluate_objective(const Environment& env, const TeamState& team,
                                      const CostModel& model);
ObjectiveBreakdown evaluate_objective(const Environment& env, const TeamState& team,
                                      std::span<const VisibilityRegion> regions,
                                      const CostModel& model);

/// Coverage of a placement set with every agent active and no cost term.
double set_coverage(const Environment& env, std::span<const Placement> placement);

/// Joint detection per quadrature node, for plotting.
std::vector<double> coverage_field(const Environment& env, const TeamState& team);

/// CSV with columns x,y,R,P for every node inside the outer polygon.
void write_field_csv(std::ostream& out, const Environment& env, std::span<const double> field);

}  // namespace teamcov
