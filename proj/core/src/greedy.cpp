#include "teamcov/greedy.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "teamcov/errors.hpp"
#include "teamcov/parallel.hpp"

namespace teamcov {

GroundSet build_ground_set(const MissionSpace& space, int lattice, std::size_t rank) {
  if (lattice < 2) throw ParameterError("ground lattice must be at least 2x2");
  if (rank < 1) throw ParameterError("rank must be at least 1");
  const BoundingBox& bb = space.bounds();
  GroundSet ground;
  ground.rank = rank;
  ground.lattice = lattice;
  for (int j = 0; j < lattice; ++j) {
    for (int i = 0; i < lattice; ++i) {
      Vec2 p{bb.lo.x + (i + 0.5) * bb.width() / lattice, bb.lo.y + (j + 0.5) * bb.height() / lattice};
      p = project_to_feasible(space, p);
      bool duplicate = false;
      for (const Vec2& q : ground.points) {
        if (distance(p, q) <= kGeomEps) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) ground.points.push_back(p);
    }
  }
  if (ground.points.size() < rank) {
    throw ParameterError("ground set has " + std::to_string(ground.points.size()) +
                         " distinct feasible points, fewer than the rank " + std::to_string(rank));
  }
  return ground;
}

FootprintTable::FootprintTable(const Environment& env, std::span<const Vec2> points,
                               std::span<const AgentClass> classes)
    : env_(&env), points_(points.size()), classes_(classes.size()) {
  table_.resize(points_ * classes_);
  parallel_for(points_ * classes_, [&](std::size_t idx) {
    const std::size_t j = idx / classes_;
    const std::size_t c = idx % classes_;
    const AgentClass& cls = classes[c];
    const VisibilityRegion r = visibility_region(env.space(), points[j], cls.delta, env.grid(), false);
    Footprint& fp = table_[idx];
    fp.nodes = r.nodes;
    fp.probs.resize(r.nodes.size());
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
      fp.probs[k] = cls.p0 * std::exp(-cls.lambda * r.distances[k]);
    }
  });
}

double FootprintTable::gain(std::size_t point, std::size_t cls, std::span<const double> miss) const {
  const Footprint& fp = at(point, cls);
  const auto& mass = env_->node_masses();
  double acc = 0.0;
  for (std::size_t k = 0; k < fp.nodes.size(); ++k) {
    const NodeIndex n = fp.nodes[k];
    acc += mass[n] * fp.probs[k] * miss[n];
  }
  return acc;
}

void FootprintTable::apply(std::size_t point, std::size_t cls, std::span<double> miss) const {
  const Footprint& fp = at(point, cls);
  for (std::size_t k = 0; k < fp.nodes.size(); ++k) miss[fp.nodes[k]] *= 1.0 - fp.probs[k];
}

double discrete_derivative(const Environment& env, std::span<const Placement> placed, Vec2 x,
                           const AgentClass& cls) {
  TeamState team;
  for (const Placement& p : placed) {
    team.positions.push_back(p.point);
    team.memberships.push_back(1.0);
    team.classes.push_back(p.cls);
  }
  const auto regions = team_regions(env, team);
  const auto miss = miss_field(env, team, regions);
  const VisibilityRegion r = visibility_region(env.space(), x, cls.delta, env.grid(), false);
  double acc = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    const NodeIndex n = r.nodes[k];
    acc += env.node_mass(n) * cls.p0 * std::exp(-cls.lambda * r.distances[k]) * miss[n];
  }
  return acc;
}

std::vector<Placement> GreedySolution::placements() const {
  std::vector<Placement> out;
  out.reserve(steps.size());
  for (const GreedyStep& s : steps) out.push_back({s.position, classes[s.cls]});
  return out;
}

GreedySolution greedy_place(const Environment& env, const GroundSet& ground, const Roster& roster) {
  const FootprintTable table(env, ground.points, roster.classes);
  GreedySolution sol = greedy_place(table, roster);
  for (GreedyStep& s : sol.steps) s.position = ground.points[s.point];
  return sol;
}

GreedySolution greedy_place(const FootprintTable& table, const Roster& roster) {
  if (table.classes() != roster.classes.size()) {
    throw PreconditionError("greedy_place: footprint classes do not match the roster");
  }
  const std::size_t rank = roster.size();
  const std::size_t n = table.points();
  const std::size_t nc = table.classes();
  if (rank > n) throw PreconditionError("greedy_place: roster larger than the ground set");

  GreedySolution sol;
  sol.classes = roster.classes;
  sol.ground_size = n;
  std::vector<double> miss(table.environment().grid().size(), 1.0);
  std::vector<char> used(n, 0);
  std::vector<std::size_t> remaining = roster.counts;
  double value = 0.0;
  constexpr double kInvalid = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t step = 0; step < rank; ++step) {
    std::vector<double> gains(n * nc, kInvalid);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_j = n;
    std::size_t best_c = nc;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      for (std::size_t c = 0; c < nc; ++c) {
        if (remaining[c] == 0) continue;
        const double g = table.gain(j, c, miss);
        gains[j * nc + c] = g;
        if (g > best) {
          best = g;
          best_j = j;
          best_c = c;
        }
      }
    }
    table.apply(best_j, best_c, miss);
    used[best_j] = 1;
    --remaining[best_c];
    value += best;
    sol.steps.push_back({best_j, best_c, Vec2{}, best, value});
    sol.candidate_gains.push_back(std::move(gains));
  }
  return sol;
}

void write_greedy_trace_csv(std::ostream& out, const GreedySolution& sol) {
  out << "iteration,x,y,class,gain,value\n";
  for (std::size_t i = 0; i < sol.steps.size(); ++i) {
    const GreedyStep& s = sol.steps[i];
    out << i + 1 << ',' << s.position.x << ',' << s.position.y << ',' << s.cls << ',' << s.gain
        << ',' << s.value << '\n';
  }
}

}  // namespace teamcov
