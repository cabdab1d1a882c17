#include "teamcov/pipeline.hpp"

#include <chrono>

#include "teamcov/errors.hpp"

namespace teamcov {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ObjectiveBreakdown best_of(const BaselineReport& r) {
  const CompositionResult& c = r.compositions[r.best];
  return {c.coverage, c.cost, c.total};
}

}  // namespace

double RunReport::normalized(const ObjectiveBreakdown& o) const {
  return total_density > 0.0 ? w1 / total_density * o.total : 0.0;
}

RunReport run_pipeline(const Scenario& scenario) {
  scenario.validate();
  const Environment env = scenario.environment();
  const CostModel model = scenario.cost_model(env);
  const Roster& roster = scenario.roster;

  RunReport rep;
  rep.scenario = scenario.name;
  rep.seed = scenario.seed;
  rep.w1 = scenario.w1;
  rep.beta = model.beta;
  rep.total_density = env.total_density();

  auto start = Clock::now();
  const GroundSet ground = build_ground_set(env.space(), scenario.lattice, roster.size());
  const FootprintTable table(env, ground.points, roster.classes);
  rep.greedy = greedy_place(table, roster);
  for (GreedyStep& s : rep.greedy.steps) s.position = ground.points[s.point];
  rep.greedy_seconds = seconds_since(start);
  rep.ground_size = ground.size();

  rep.bounds = compute_bound_report(table, roster, rep.greedy, scenario.partial_mode, scenario.partial_budget);

  // The ascent starts from the greedy placement with every agent active.
  // Agents keep roster order so the cost model lines up.
  const auto agent_class = roster.agent_class_indices();
  std::vector<std::size_t> next_slot(roster.classes.size(), 0);
  std::vector<std::size_t> first(roster.classes.size(), 0);
  for (std::size_t c = 1; c < roster.classes.size(); ++c) first[c] = first[c - 1] + roster.counts[c - 1];
  rep.initial.positions.resize(roster.size());
  rep.initial.memberships.assign(roster.size(), 1.0);
  rep.initial.classes = roster.agents();
  for (const GreedyStep& s : rep.greedy.steps) {
    rep.initial.positions[first[s.cls] + next_slot[s.cls]++] = s.position;
  }
  rep.greedy_objective = evaluate_objective(env, rep.initial, model);

  start = Clock::now();
  PgaResult res = pga_run(env, rep.initial, model, scenario.pga);
  rep.pga_seconds = seconds_since(start);
  rep.final_state = std::move(res.state);
  rep.trace = std::move(res.trace);
  rep.pga_objective = evaluate_objective(env, rep.final_state, model);

  rep.team_by_class.assign(roster.classes.size(), 0);
  std::vector<Placement> selected;
  for (std::size_t i = 0; i < rep.final_state.size(); ++i) {
    if (rep.final_state.memberships[i] < kSelectedThreshold) continue;
    ++rep.team_by_class[agent_class[i]];
    selected.push_back({rep.final_state.positions[i], rep.final_state.classes[i]});
  }
  rep.final_team_size = selected.size();
  if (!selected.empty()) {
    rep.post = post_pga_bound(env, ground, selected, scenario.partial_mode, scenario.partial_budget);
  }
  return rep;
}

std::vector<SweepRow> sweep_w1(const Scenario& scenario, std::span<const double> w1_values) {
  std::vector<SweepRow> rows;
  for (double w1 : w1_values) {
    if (!(w1 > 0.0 && w1 <= 1.0)) throw ParameterError("sweep weights must lie in (0, 1]");
    Scenario sc = scenario;
    sc.w1 = w1;
    const RunReport rep = run_pipeline(sc);
    rows.push_back({w1, rep.pga_objective, rep.final_team_size});
  }
  return rows;
}

OracleComparison compare_oracle(const Scenario& scenario, std::span<const double> w1_values) {
  if (!scenario.obstacles.empty()) {
    throw PreconditionError(
        "the exhaustive team baseline is only defined for an obstacle-free mission space; remove the "
        "obstacles or use another subcommand");
  }
  scenario.validate();
  const Environment env = scenario.environment();
  const Roster& roster = scenario.roster;

  OracleComparison out;
  // Coverage of a composition does not depend on w1, so one baseline run per
  // init mode serves every weight after rescoring.
  {
    Scenario sc = scenario;
    const CostModel model = sc.cost_model(env);
    out.random = exhaustive_team_baseline(env, roster, model, sc.oracle, InitMode::random, sc.pga);
    out.corner = exhaustive_team_baseline(env, roster, model, sc.oracle, InitMode::corner, sc.pga);
  }
  for (double w1 : w1_values) {
    Scenario sc = scenario;
    sc.w1 = w1;
    const CostModel model = sc.cost_model(env);
    rescore(out.random, roster, model);
    rescore(out.corner, roster, model);
    const RunReport rep = run_pipeline(sc);

    ComparisonRow row;
    row.w1 = w1;
    row.pga = rep.pga_objective;
    row.pga_team_size = rep.final_team_size;
    row.pga_seconds = rep.greedy_seconds + rep.pga_seconds;
    row.random_best = best_of(out.random);
    row.random_best_counts = out.random.compositions[out.random.best].counts;
    row.corner_best = best_of(out.corner);
    row.corner_best_counts = out.corner.compositions[out.corner.best].counts;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace teamcov
