#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "teamcov/field.hpp"

namespace teamcov {

enum class StepSchedule {
  fixed,        ///< eta^(k) = eta
  diminishing,  ///< eta^(k) = eta / (1 + k / 200)
};

struct PgaConfig {
  double eta_s = 2.0;
  double eta_t = 5e-6;
  double eps_s = 1e-2;
  double eps_t = 1e-4;
  std::size_t max_iters = 2000;
  StepSchedule schedule = StepSchedule::fixed;

  bool backtracking = true;
  double shrink = 0.5;
  /// Backtracking gives up once the step multiplier falls below this.
  double min_step = 1e-6;
  /// Upper limit for the membership step multiplier. Successive accepted
  /// steps double it, so a long run of same-sign membership updates speeds
  /// up instead of crawling at eta_t. 1 keeps the plain fixed step.
  double max_expansion = 64.0;

  /// Midpoint samples per impact segment.
  std::size_t boundary_samples = 64;
  /// Include the moving sensing-circle boundary in the position gradient.
  bool arc_correction = true;
  std::size_t arc_samples = 360;

  /// When false only positions move; memberships stay at their initial values.
  bool optimize_memberships = true;
  /// Run degenerate-membership resolution after convergence.
  bool resolve_degenerate = true;

  /// Throws ParameterError on non-positive steps or tolerances, or a shrink
  /// factor outside (0, 1).
  void validate() const;
  /// |dH/dt_i| below this counts as degenerate: a fixed-step update that
  /// small is already under the membership stopping tolerance.
  double degeneracy_tolerance() const { return eps_t / eta_t; }
};

/// Agents whose visibility regions share at least one quadrature node.
struct NeighborGraph {
  std::vector<std::vector<std::size_t>> adjacency;

  bool adjacent(std::size_t i, std::size_t j) const;
  /// adjacency[i] plus i itself, sorted.
  std::vector<std::size_t> closed(std::size_t i) const;
};

NeighborGraph neighbor_graph(const TeamState& team, std::span<const VisibilityRegion> regions);
NeighborGraph neighbor_graph(const Environment& env, const TeamState& team);

/// Everything the gradients of one team state need: the visibility regions
/// (with impact segments) and the neighbor graph.
struct GradientContext {
  std::vector<VisibilityRegion> regions;
  NeighborGraph graph;
};

GradientContext make_gradient_context(const Environment& env, const TeamState& team);

/// Product over the neighbors of agent i of their miss probabilities, on
/// each node of agent i's region.
std::vector<double> local_miss(const TeamState& team, const GradientContext& ctx, std::size_t i);

/// dH/ds_i: quadrature over the region of the kernel derivative, plus the
/// contribution of each shadow segment as it swings with s_i, plus (when
/// enabled) the contribution of the visible part of the sensing circle.
Vec2 gradient_position(const Environment& env, const TeamState& team, const GradientContext& ctx,
                       std::size_t i, const PgaConfig& cfg = {});
Vec2 gradient_position(const Environment& env, const TeamState& team, std::size_t i,
                       const PgaConfig& cfg = {});

/// dH/dt_i = local coverage of agent i (unit membership) minus beta * gamma_i.
double gradient_membership(const Environment& env, const TeamState& team, const GradientContext& ctx,
                           const CostModel& model, std::size_t i);
double gradient_membership(const Environment& env, const TeamState& team, const CostModel& model,
                           std::size_t i);

/// H(s,t) = t_i * H_i + H_i^c, where H_i^c is the objective of the team
/// without agent i (same beta).
struct Decomposition {
  double H_i = 0.0;
  double H_complement = 0.0;
};
Decomposition decompose(const Environment& env, const TeamState& team, const CostModel& model,
                        std::size_t i);

struct PgaTraceRow {
  std::size_t iteration = 0;
  ObjectiveBreakdown objective;
  double max_position_step = 0.0;
  double max_membership_step = 0.0;
  double step_s = 0.0;  ///< position step size actually applied
  double step_t = 0.0;  ///< membership step size actually applied
};

struct PgaTrace {
  std::vector<PgaTraceRow> rows;
  bool converged = false;
  /// Backtracking could not find a non-decreasing step.
  bool stalled = false;
  std::size_t iterations = 0;
  /// Agents whose membership was reset by degenerate resolution.
  std::vector<std::size_t> resolved_agents;
};

struct PgaResult {
  TeamState state;
  PgaTrace trace;
};

/// Projected gradient ascent on (s, t) with synchronous updates. Throws
/// PreconditionError for an infeasible initial state.
PgaResult pga_run(const Environment& env, const TeamState& init, const CostModel& model,
                  const PgaConfig& cfg = {});

/// Agents that ended with a fractional membership and a near-zero dH/dt_i.
std::vector<std::size_t> degenerate_agents(const Environment& env, const TeamState& team,
                                           const CostModel& model, const PgaConfig& cfg);

/// Sets t_i = 0 and re-runs the ascent from there. Rows of the re-run are
/// appended to `trace`.
TeamState resolve_degenerate_t(const Environment& env, const TeamState& team, const CostModel& model,
                               const PgaConfig& cfg, std::size_t i, PgaTrace& trace);

/// CSV: iteration,coverage,cost,total,max_ds,max_dt,step_s,step_t
void write_pga_trace_csv(std::ostream& out, const PgaTrace& trace);

}  // namespace teamcov
