#include "teamcov/field.hpp"

#include <cmath>
#include <ostream>

#include "teamcov/errors.hpp"
#include "teamcov/parallel.hpp"

namespace teamcov {
namespace {

void require_feasible(const Environment& env, const TeamState& team) {
  if (team.memberships.size() != team.size() || team.classes.size() != team.size()) {
    throw PreconditionError("team state arrays differ in length");
  }
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (!is_feasible(env.space(), team.positions[i])) {
      throw PreconditionError("agent " + std::to_string(i) + " is outside the feasible region");
    }
  }
}

double covered_mass(const Environment& env, std::span<const double> miss) {
  const auto& mass = env.node_masses();
  double acc = 0.0;
  for (std::size_t k = 0; k < miss.size(); ++k) acc += mass[k] * (1.0 - miss[k]);
  return acc;
}

}  // namespace

double joint_detection(std::span<const double> probabilities) {
  double miss = 1.0;
  for (double p : probabilities) miss *= 1.0 - p;
  return 1.0 - miss;
}

double joint_detection(const TeamState& team, std::span<const VisibilityRegion> regions,
                       NodeIndex node) {
  double miss = 1.0;
  for (std::size_t i = 0; i < team.size(); ++i) {
    miss *= 1.0 - constrained_detection(team.classes[i], regions[i], node, team.memberships[i]);
  }
  return 1.0 - miss;
}

std::vector<VisibilityRegion> team_regions(const Environment& env, const TeamState& team,
                                           bool with_impact_segments) {
  require_feasible(env, team);
  std::vector<VisibilityRegion> regions(team.size());
  parallel_for(team.size(), [&](std::size_t i) {
    regions[i] = visibility_region(env.space(), team.positions[i], team.classes[i].delta,
                                   env.grid(), with_impact_segments);
  });
  return regions;
}

std::vector<double> miss_field(const Environment& env, const TeamState& team,
                               std::span<const VisibilityRegion> regions) {
  std::vector<double> miss(env.grid().size(), 1.0);
  for (std::size_t i = 0; i < team.size(); ++i) {
    const double t = team.memberships[i];
    if (t == 0.0) continue;
    const AgentClass& cls = team.classes[i];
    const VisibilityRegion& r = regions[i];
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
      miss[r.nodes[k]] *= 1.0 - t * cls.p0 * std::exp(-cls.lambda * r.distances[k]);
    }
  }
  return miss;
}

ObjectiveBreakdown evaluate_objective(const Environment& env, const TeamState& team,
                                      const CostModel& model) {
  const auto regions = team_regions(env, team);
  return evaluate_objective(env, team, regions, model);
}

ObjectiveBreakdown evaluate_objective(const Environment& env, const TeamState& team,
                                      std::span<const VisibilityRegion> regions,
                                      const CostModel& model) {
  require_feasible(env, team);
  if (regions.size() != team.size()) {
    throw PreconditionError("evaluate_objective: one visibility region per agent required");
  }
  const auto miss = miss_field(env, team, regions);
  ObjectiveBreakdown out;
  out.coverage = covered_mass(env, miss);
  out.cost = model.cost(team.memberships);
  out.total = out.coverage - out.cost;
  return out;
}

double set_coverage(const Environment& env, std::span<const Placement> placement) {
  TeamState team;
  for (const Placement& p : placement) {
    team.positions.push_back(p.point);
    team.memberships.push_back(1.0);
    team.classes.push_back(p.cls);
  }
  const auto regions = team_regions(env, team);
  const auto miss = miss_field(env, team, regions);
  return covered_mass(env, miss);
}

std::vector<double> coverage_field(const Environment& env, const TeamState& team) {
  const auto regions = team_regions(env, team);
  auto field = miss_field(env, team, regions);
  for (double& v : field) v = 1.0 - v;
  return field;
}

void write_field_csv(std::ostream& out, const Environment& env, std::span<const double> field) {
  const QuadratureGrid& grid = env.grid();
  out << "x,y,R,P\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!grid.in_omega(k)) continue;
    const Vec2 p = grid.node(k);
    out << p.x << ',' << p.y << ',' << env.density().at(p) << ',' << field[k] << '\n';
  }
}

}  // namespace teamcov
