#include <benchmark/benchmark.h>

#include "teamcov/teamcov.hpp"

using namespace teamcov;

namespace {

Polygon rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }

MissionSpace cluttered() {
  return MissionSpace(rect(0, 0, 600, 600), {rect(90, 400, 190, 480), rect(420, 90, 500, 190),
                                             rect(110, 110, 210, 160), rect(300, 280, 360, 360)});
}

TeamState lattice_team(const MissionSpace& space, const AgentClass& c, int n) {
  TeamState t;
  for (int k = 0; k < n; ++k) {
    t.positions.push_back(project_to_feasible(space, {60.0 + 120.0 * (k % 5), 150.0 + 300.0 * (k / 5)}));
    t.memberships.push_back(1.0);
    t.classes.push_back(c);
  }
  return t;
}

void BM_VisibilityRegion(benchmark::State& state) {
  const MissionSpace space = cluttered();
  const QuadratureGrid grid(space, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(visibility_region(space, {250, 250}, 200.0, grid));
  }
}
BENCHMARK(BM_VisibilityRegion)->Arg(10)->Arg(5)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Objective(benchmark::State& state) {
  const Environment env(cluttered(), static_cast<double>(state.range(0)), DensityField::uniform(1.0));
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const TeamState team = lattice_team(env.space(), c, 10);
  const CostModel model = CostModel::make(0.68, env.total_density(), team.gammas());
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_objective(env, team, model));
}
BENCHMARK(BM_Objective)->Arg(10)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Gradients(benchmark::State& state) {
  const Environment env(cluttered(), 10.0, DensityField::uniform(1.0));
  const AgentClass c = make_agent_class(1.0, 0.012, 200.0);
  const TeamState team = lattice_team(env.space(), c, 10);
  const CostModel model = CostModel::make(0.68, env.total_density(), team.gammas());
  for (auto _ : state) {
    const GradientContext ctx = make_gradient_context(env, team);
    for (std::size_t i = 0; i < team.size(); ++i) {
      benchmark::DoNotOptimize(gradient_position(env, team, ctx, i));
      benchmark::DoNotOptimize(gradient_membership(env, team, ctx, model, i));
    }
  }
}
BENCHMARK(BM_Gradients)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const Environment env(cluttered(), 10.0, DensityField::uniform(1.0));
  Roster roster;
  roster.add(make_agent_class(1.0, 0.012, 200.0), 10);
  const GroundSet ground = build_ground_set(env.space(), static_cast<int>(state.range(0)), roster.size());
  for (auto _ : state) benchmark::DoNotOptimize(greedy_place(env, ground, roster));
}
BENCHMARK(BM_Greedy)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
