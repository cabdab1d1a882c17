// teamcov: command line front end for the coverage team optimizer.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "teamcov/teamcov.hpp"

namespace fs = std::filesystem;
using namespace teamcov;

namespace {

struct Globals {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_cell;
  std::optional<double> w1;
  std::optional<int> lattice;
  std::optional<std::size_t> max_iters;
  std::optional<std::string> partial_mode;
  bool no_arc = false;
  std::string out_dir = "out";
  unsigned threads = 1;
};

Scenario load(const Globals& g) {
  Scenario sc = load_scenario(g.scenario_path);
  if (g.seed) {
    sc.seed = *g.seed;
    sc.oracle.seed = *g.seed;
  }
  if (g.grid_cell) sc.grid_cell = *g.grid_cell;
  if (g.w1) sc.w1 = *g.w1;
  if (g.lattice) sc.lattice = *g.lattice;
  if (g.max_iters) sc.pga.max_iters = *g.max_iters;
  if (g.no_arc) sc.pga.arc_correction = false;
  if (g.partial_mode) {
    if (*g.partial_mode == "exact") {
      sc.partial_mode = PartialMode::exact;
    } else if (*g.partial_mode == "conservative") {
      sc.partial_mode = PartialMode::conservative;
    } else {
      sc.partial_mode = PartialMode::automatic;
    }
  }
  sc.validate();
  return sc;
}

fs::path out_file(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  out << std::setprecision(12);
  return out;
}

void cmd_validate(const Globals& g) {
  const Scenario sc = load(g);
  const Environment env = sc.environment();
  const CostModel model = sc.cost_model(env);
  std::cout << "scenario " << sc.name << ": ok\n"
            << "  obstacles: " << sc.obstacles.size() << "\n"
            << "  grid: " << env.grid().nx() << " x " << env.grid().ny() << " cells of " << sc.grid_cell << "\n"
            << "  integral of R: " << env.total_density() << "\n"
            << "  roster: " << sc.roster.size() << " agents in " << sc.roster.classes.size() << " class(es)\n";
  for (std::size_t c = 0; c < sc.roster.classes.size(); ++c) {
    const AgentClass& a = sc.roster.classes[c];
    std::cout << "    class " << c << ": " << sc.roster.counts[c] << " x (p0=" << a.p0 << ", lambda=" << a.lambda
              << ", delta=" << a.delta << ", w2=" << a.w2 << ")  kappa=" << a.kappa()
              << "  gamma=" << a.gamma() << "\n";
  }
  std::cout << "  w1=" << sc.w1 << "  beta=" << model.beta << "\n";
}

void cmd_greedy(const Globals& g) {
  const Scenario sc = load(g);
  const Environment env = sc.environment();
  const GroundSet ground = build_ground_set(env.space(), sc.lattice, sc.roster.size());
  const GreedySolution sol = greedy_place(env, ground, sc.roster);
  const fs::path path = out_file(g, "greedy_trace.csv");
  auto out = open_out(path);
  write_greedy_trace_csv(out, sol);
  std::cout << "greedy H(S^G) = " << sol.value() << " with " << sol.rank() << " agents on " << ground.size()
            << " ground points\ntrace: " << path.string() << "\n";
}

void cmd_bounds(const Globals& g) {
  const Scenario sc = load(g);
  const Environment env = sc.environment();
  const GroundSet ground = build_ground_set(env.space(), sc.lattice, sc.roster.size());
  const FootprintTable table(env, ground.points, sc.roster.classes);
  const GreedySolution sol = greedy_place(table, sc.roster);
  const BoundReport rep = compute_bound_report(table, sc.roster, sol, sc.partial_mode, sc.partial_budget);
  const fs::path path = out_file(g, "bounds.json");
  auto out = open_out(path);
  write_bound_report_json(out, rep);
  write_bound_report_json(std::cout, rep);
}

void cmd_optimize(const Globals& g) {
  const Scenario sc = load(g);
  const RunReport rep = run_pipeline(sc);
  ReportFiles files{"greedy_trace.csv", "pga_trace.csv", "team.json"};
  {
    auto out = open_out(out_file(g, files.greedy_trace));
    write_greedy_trace_csv(out, rep.greedy);
  }
  {
    auto out = open_out(out_file(g, files.pga_trace));
    write_pga_trace_csv(out, rep.trace);
  }
  {
    auto out = open_out(out_file(g, files.team));
    write_team_json(out, rep.final_state);
  }
  {
    auto out = open_out(out_file(g, "report.json"));
    write_run_report_json(out, rep, files);
  }
  {
    auto out = open_out(out_file(g, "timing.json"));
    write_timing_json(out, rep);
  }
  print_run_summary(std::cout, rep);
  std::cout << "\nreport: " << (fs::path(g.out_dir) / "report.json").string() << "\n";
}

void cmd_sweep(const Globals& g, const std::vector<double>& values) {
  const Scenario sc = load(g);
  const auto rows = sweep_w1(sc, values);
  const fs::path path = out_file(g, "sweep_w1.csv");
  auto out = open_out(path);
  write_sweep_csv(out, rows);
  write_sweep_csv(std::cout, rows);
}

void cmd_compare(const Globals& g, const std::vector<double>& values) {
  const Scenario sc = load(g);
  const OracleComparison cmp = compare_oracle(sc, values);
  const std::size_t nc = sc.roster.classes.size();
  {
    auto out = open_out(out_file(g, "baseline_random.csv"));
    write_baseline_csv(out, cmp.random, nc);
  }
  {
    auto out = open_out(out_file(g, "baseline_corner.csv"));
    write_baseline_csv(out, cmp.corner, nc);
  }
  auto out = open_out(out_file(g, "comparison.csv"));
  write_comparison_csv(out, cmp);
  write_comparison_csv(std::cout, cmp);
  std::cout << "compositions: " << cmp.random.compositions.size() << "  baseline seconds: random "
            << cmp.random.seconds << ", corner " << cmp.corner.seconds << "\n";
}

void cmd_dump_field(const Globals& g, const std::string& stage) {
  const Scenario sc = load(g);
  const Environment env = sc.environment();
  TeamState team;
  if (stage == "greedy") {
    const GroundSet ground = build_ground_set(env.space(), sc.lattice, sc.roster.size());
    const GreedySolution sol = greedy_place(env, ground, sc.roster);
    for (const Placement& p : sol.placements()) {
      team.positions.push_back(p.point);
      team.memberships.push_back(1.0);
      team.classes.push_back(p.cls);
    }
  } else {
    team = run_pipeline(sc).final_state;
  }
  const fs::path path = out_file(g, "field.csv");
  auto out = open_out(path);
  write_field_csv(out, env, coverage_field(env, team));
  std::cout << "field: " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composition and placement of heterogeneous sensor teams for coverage"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed (overrides the scenario)");
  app.add_option("--grid-cell", g.grid_cell, "Quadrature cell size")->check(CLI::PositiveNumber);
  app.add_option("--w1", g.w1, "Coverage weight w1 in (0, 1]");
  app.add_option("--lattice", g.lattice, "Ground lattice size k (k x k points)");
  app.add_option("--max-iters", g.max_iters, "Ascent iteration cap");
  app.add_option("--partial-mode", g.partial_mode, "Partial curvature: automatic, exact or conservative")
      ->check(CLI::IsMember({"automatic", "exact", "conservative"}));
  app.add_flag("--no-arc", g.no_arc, "Drop the sensing-circle term from position gradients");
  app.add_option("--out-dir", g.out_dir, "Directory for exported files");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("scenario", g.scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario and print derived constants");
  add_scenario(validate);
  auto* greedy = app.add_subcommand("greedy", "Greedy placement on the ground lattice");
  add_scenario(greedy);
  auto* bounds = app.add_subcommand("bounds", "Greedy placement plus curvature bounds");
  add_scenario(bounds);
  auto* optimize = app.add_subcommand("optimize", "Full pipeline: greedy, bounds, ascent, post-ascent bound");
  add_scenario(optimize);

  std::vector<double> sweep_values{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  auto* sweep = app.add_subcommand("sweep-w1", "Run the pipeline over several w1 values");
  add_scenario(sweep);
  sweep->add_option("--values", sweep_values, "w1 values")->expected(1, -1);

  std::vector<double> compare_values{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  auto* compare = app.add_subcommand("compare-oracle", "Pipeline against the exhaustive team baseline");
  add_scenario(compare);
  compare->add_option("--values", compare_values, "w1 values")->expected(1, -1);

  std::string stage = "pga";
  auto* dump = app.add_subcommand("dump-field", "Write the joint detection field as CSV");
  add_scenario(dump);
  dump->add_option("--stage", stage, "greedy or pga")->check(CLI::IsMember({"greedy", "pga"}));

  CLI11_PARSE(app, argc, argv);
  set_max_threads(g.threads);

  try {
    if (*validate) cmd_validate(g);
    if (*greedy) cmd_greedy(g);
    if (*bounds) cmd_bounds(g);
    if (*optimize) cmd_optimize(g);
    if (*sweep) cmd_sweep(g, sweep_values);
    if (*compare) cmd_compare(g, compare_values);
    if (*dump) cmd_dump_field(g, stage);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
