#include <cmath>
#include <random>

#include "doctest.h"
#include "teamcov/errors.hpp"
#include "teamcov/pga.hpp"

using namespace teamcov;

namespace {

Polygon square(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

TeamState team_of(std::vector<Vec2> pos, std::vector<double> t, const AgentClass& c) {
  TeamState s;
  s.positions = std::move(pos);
  s.memberships = std::move(t);
  s.classes.assign(s.positions.size(), c);
  return s;
}

}  // namespace

TEST_CASE("config validation") {
  PgaConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eta_s = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.shrink = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.max_expansion = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  CHECK(PgaConfig{}.degeneracy_tolerance() == doctest::Approx(1e-4 / 5e-6));
}

TEST_CASE("neighbor graph") {
  const Environment env(MissionSpace(square(0, 0, 600, 200), {square(290, 20, 310, 180)}), 5.0,
                        DensityField::uniform(1.0));
  const AgentClass c = make_agent_class(1.0, 0.01, 60.0);
  // 0 and 1 overlap; 2 is close to 1 but behind the wall, with shared nodes
  // only above and below it; 3 is far away.
  const TeamState team = team_of({{100, 100}, {150, 100}, {330, 100}, {550, 100}}, {1, 1, 1, 1}, c);
  const NeighborGraph g = neighbor_graph(env, team);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 3));
  CHECK_FALSE(g.adjacent(2, 3) != g.adjacent(3, 2));
  CHECK(g.closed(0) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("membership gradient equals the decomposition") {
  const Environment env(MissionSpace(square(0, 0, 400, 400), {square(150, 150, 250, 220)}), 5.0,
                        DensityField::uniform(1.0));
  const AgentClass a = make_agent_class(1.0, 0.012, 150.0);
  const AgentClass b = make_agent_class(0.8, 0.02, 80.0, 0.7);
  TeamState team = team_of({{100, 100}, {300, 120}, {200, 300}}, {0.3, 0.9, 0.6}, a);
  team.classes[1] = b;
  const CostModel model = CostModel::make(0.6, env.total_density(), team.gammas());
  const double H = evaluate_objective(env, team, model).total;
  for (std::size_t i = 0; i < team.size(); ++i) {
    const Decomposition d = decompose(env, team, model, i);
    CHECK(gradient_membership(env, team, model, i) == doctest::Approx(d.H_i).epsilon(1e-12));
    CHECK(team.memberships[i] * d.H_i + d.H_complement == doctest::Approx(H).epsilon(1e-12));
  }
}

TEST_CASE("isolated agent membership gradient is its capability") {
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const Environment env(MissionSpace(square(0, 0, 600, 600), {}), 5.0, DensityField::uniform(1.0));
  const TeamState team = team_of({{300, 300}}, {0.4}, c);
  const CostModel model = CostModel::make(1.0, env.total_density(), team.gammas());
  CHECK(gradient_membership(env, team, model, 0) == doctest::Approx(c.kappa()).epsilon(0.01));
}

TEST_CASE("position gradient points toward uncovered space") {
  const AgentClass c = make_agent_class(1.0, 0.01, 80.0);
  const Environment env(MissionSpace(square(0, 0, 400, 200), {}), 2.0, DensityField::uniform(1.0));
  // Pressed against the left wall, the agent gains by moving right.
  const TeamState team = team_of({{30, 100}}, {1.0}, c);
  const Vec2 g = gradient_position(env, team, 0);
  CHECK(g.x > 0.0);
  CHECK(std::abs(g.y) < 0.05 * g.x);
  // At the center of a symmetric box the gradient nearly vanishes.
  const Environment box(MissionSpace(square(0, 0, 200, 200), {}), 2.0, DensityField::uniform(1.0));
  const Vec2 h = gradient_position(box, team_of({{100, 100}}, {1.0}, c), 0);
  CHECK(norm(h) < 0.05 * g.x);
}

TEST_CASE("position gradient against finite differences near an obstacle") {
  const AgentClass c = make_agent_class(1.0, 0.012, 120.0);
  const Environment env(MissionSpace(square(0, 0, 300, 300), {square(140, 120, 180, 200)}), 0.5,
                        DensityField::uniform(1.0));
  const TeamState team = team_of({{90, 150}, {150, 60}}, {0.8, 0.6}, c);
  const CostModel model = CostModel::make(0.7, env.total_density(), team.gammas());
  const Vec2 g = gradient_position(env, team, 0);
  // A stencil several cells wide keeps node flips from dominating the difference.
  const double h = 2.0;
  Vec2 fd;
  for (int k = 0; k < 2; ++k) {
    const Vec2 e = k == 0 ? Vec2{h, 0} : Vec2{0, h};
    TeamState p = team, m = team;
    p.positions[0] += e;
    m.positions[0] -= e;
    (k == 0 ? fd.x : fd.y) =
        (evaluate_objective(env, p, model).total - evaluate_objective(env, m, model).total) / (2 * h);
  }
  CHECK(norm(g - fd) / norm(fd) < 0.02);
}

TEST_CASE("ascent is monotone and ends binary") {
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const Environment env(MissionSpace(square(0, 0, 600, 600), {square(250, 250, 350, 350)}), 15.0,
                        DensityField::uniform(1.0));
  std::vector<Vec2> pos;
  for (int k = 0; k < 6; ++k) pos.push_back({100.0 + 80.0 * k, 100.0 + 60.0 * (k % 2)});
  const TeamState init = team_of(pos, std::vector<double>(6, 1.0), c);
  const CostModel model = CostModel::make(0.68, env.total_density(), init.gammas());
  const PgaResult res = pga_run(env, init, model);
  const auto& rows = res.trace.rows;
  REQUIRE(rows.size() >= 2);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].objective.total >= rows[k - 1].objective.total);
  CHECK(res.trace.converged);
  for (double t : res.state.memberships) CHECK(std::min(t, 1.0 - t) <= 1e-3);
  for (Vec2 p : res.state.positions) CHECK(is_feasible(env.space(), p));
  CHECK(evaluate_objective(env, res.state, model).total >= evaluate_objective(env, init, model).total);
}

TEST_CASE("position-only ascent keeps memberships") {
  const AgentClass c = make_agent_class(1.0, 0.012, 100.0);
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 10.0, DensityField::uniform(1.0));
  const TeamState init = team_of({{20, 20}, {40, 30}}, {1.0, 1.0}, c);
  const CostModel model = CostModel::make(0.7, env.total_density(), init.gammas());
  PgaConfig cfg;
  cfg.optimize_memberships = false;
  const PgaResult res = pga_run(env, init, model, cfg);
  CHECK(res.state.memberships == init.memberships);
  CHECK(distance(res.state.positions[0], res.state.positions[1]) > distance(init.positions[0], init.positions[1]));
}

TEST_CASE("degenerate membership resolution") {
  // Two nearly certain sensors on one spot and no cost: whatever the second
  // membership is, the objective barely moves.
  const AgentClass c = make_agent_class(1.0, 1e-5, 50.0);
  const Environment env(MissionSpace(square(0, 0, 300, 300), {}), 5.0, DensityField::uniform(1.0));
  TeamState team = team_of({{150, 150}, {150, 150}}, {1.0, 0.5}, c);
  const CostModel model = CostModel::make(1.0, env.total_density(), team.gammas());
  const double before = evaluate_objective(env, team, model).total;
  PgaConfig cfg;
  cfg.max_iters = 5;
  const auto degenerate = degenerate_agents(env, team, model, cfg);
  REQUIRE(degenerate == std::vector<std::size_t>{1});
  PgaTrace trace;
  cfg.max_iters = 0;
  const TeamState fixed = resolve_degenerate_t(env, team, model, cfg, 1, trace);
  CHECK(std::min(fixed.memberships[1], 1.0 - fixed.memberships[1]) <= 1e-3);
  CHECK(std::abs(evaluate_objective(env, fixed, model).total - before) < 1e-3 * before);
  CHECK(trace.resolved_agents == std::vector<std::size_t>{1});
}
