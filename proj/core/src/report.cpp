#include "teamcov/report.hpp"

#include <iomanip>
#include <ostream>

#include "json.hpp"

namespace teamcov {
namespace {

using nlohmann::ordered_json;

ordered_json objective_json(const ObjectiveBreakdown& o) {
  return {{"coverage", o.coverage}, {"cost", o.cost}, {"total", o.total}};
}

template <class T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json bounds_json(const BoundReport& b) {
  ordered_json j;
  j["rank"] = b.rank;
  j["homogeneous"] = b.homogeneous;
  j["alpha_T"] = opt(b.alpha_T);
  j["alpha_P"] = opt(b.alpha_P);
  j["alpha_P_mode"] = to_string(b.alpha_P_mode);
  j["alpha_G"] = opt(b.alpha_G);
  j["L_C"] = opt(b.L_C);
  j["L_T"] = opt(b.L_T);
  j["L_P"] = opt(b.L_P);
  j["L_G"] = opt(b.L_G);
  j["L_overall"] = b.L_overall;
  j["method_notes"] = b.method_notes;
  return j;
}

ordered_json team_json(const TeamState& team) {
  ordered_json agents = ordered_json::array();
  for (std::size_t i = 0; i < team.size(); ++i) {
    const AgentClass& c = team.classes[i];
    agents.push_back({{"x", team.positions[i].x},
                      {"y", team.positions[i].y},
                      {"t", team.memberships[i]},
                      {"p0", c.p0},
                      {"lambda", c.lambda},
                      {"delta", c.delta},
                      {"w2", c.w2}});
  }
  return agents;
}

}  // namespace

void write_bound_report_json(std::ostream& out, const BoundReport& rep) {
  out << bounds_json(rep).dump(2) << '\n';
}

void write_run_report_json(std::ostream& out, const RunReport& rep, const ReportFiles& files) {
  ordered_json j;
  j["scenario"] = rep.scenario;
  j["seed"] = rep.seed;
  j["w1"] = rep.w1;
  j["beta"] = rep.beta;
  j["total_density"] = rep.total_density;
  j["ground_size"] = rep.ground_size;

  ordered_json g;
  g["N"] = rep.greedy.rank();
  g["objective"] = objective_json(rep.greedy_objective);
  g["normalized_total"] = rep.normalized(rep.greedy_objective);
  g["set_value"] = rep.greedy.value();
  j["greedy"] = g;

  j["bounds"] = bounds_json(rep.bounds);

  ordered_json p;
  p["N"] = rep.final_team_size;
  p["team_by_class"] = rep.team_by_class;
  p["objective"] = objective_json(rep.pga_objective);
  p["normalized_total"] = rep.normalized(rep.pga_objective);
  p["iterations"] = rep.trace.iterations;
  p["converged"] = rep.trace.converged;
  p["stalled"] = rep.trace.stalled;
  p["resolved_agents"] = rep.trace.resolved_agents;
  p["team"] = team_json(rep.final_state);
  j["pga"] = p;

  if (rep.post) {
    const PostBound& pb = *rep.post;
    ordered_json q;
    q["ground_size"] = pb.ground2_size;
    q["H_greedy2"] = pb.greedy2_value;
    q["H_pga"] = pb.pga_value;
    q["L2"] = pb.L2;
    q["L_prime"] = pb.L_prime;
    q["bounds"] = bounds_json(pb.bounds2);
    j["post_pga"] = q;
  } else {
    j["post_pga"] = nullptr;
  }

  ordered_json f;
  f["greedy_trace"] = files.greedy_trace;
  f["pga_trace"] = files.pga_trace;
  f["team"] = files.team;
  j["files"] = f;
  out << j.dump(2) << '\n';
}

void write_timing_json(std::ostream& out, const RunReport& rep) {
  ordered_json j;
  j["greedy_seconds"] = rep.greedy_seconds;
  j["pga_seconds"] = rep.pga_seconds;
  out << j.dump(2) << '\n';
}

void write_team_json(std::ostream& out, const TeamState& team) { out << team_json(team).dump(2) << '\n'; }

void print_run_summary(std::ostream& out, const RunReport& rep) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(1);
  out << "scenario " << rep.scenario << "  w1=" << std::setprecision(3) << rep.w1
      << "  beta=" << rep.beta << "\n\n";
  out << std::setprecision(1);
  out << std::left << std::setw(10) << "" << std::right << std::setw(6) << "N" << std::setw(14) << "H(s)"
      << std::setw(14) << "C(t)" << std::setw(14) << "H(s,t)" << std::setw(10) << "seconds" << '\n';
  out << std::left << std::setw(10) << "greedy" << std::right << std::setw(6) << rep.greedy.rank()
      << std::setw(14) << rep.greedy_objective.coverage << std::setw(14) << rep.greedy_objective.cost
      << std::setw(14) << rep.greedy_objective.total << std::setw(10) << std::setprecision(2)
      << rep.greedy_seconds << '\n';
  out << std::setprecision(1);
  out << std::left << std::setw(10) << "pga" << std::right << std::setw(6) << rep.final_team_size
      << std::setw(14) << rep.pga_objective.coverage << std::setw(14) << rep.pga_objective.cost
      << std::setw(14) << rep.pga_objective.total << std::setw(10) << std::setprecision(2)
      << rep.pga_seconds << '\n';
  out << std::setprecision(4) << "\nbounds (" << to_string(rep.bounds.alpha_P_mode) << " alpha_P):";
  auto show = [&](const char* name, const std::optional<double>& v) {
    out << "  " << name << '=';
    if (v) {
      out << *v;
    } else {
      out << '-';
    }
  };
  show("L_C", rep.bounds.L_C);
  show("L_T", rep.bounds.L_T);
  show("L_P", rep.bounds.L_P);
  show("L_G", rep.bounds.L_G);
  out << "  L=" << rep.bounds.L_overall << '\n';
  if (rep.post) {
    out << "post-ascent: H(S^G2)=" << std::setprecision(1) << rep.post->greedy2_value
        << "  L2=" << std::setprecision(4) << rep.post->L2 << "  L'=" << rep.post->L_prime << '\n';
  } else {
    out << "post-ascent: no agent selected\n";
  }
  out.flags(flags);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "w1,coverage,cost,total,N_final\n";
  for (const SweepRow& r : rows) {
    out << r.w1 << ',' << r.objective.coverage << ',' << r.objective.cost << ',' << r.objective.total << ','
        << r.final_team_size << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const OracleComparison& cmp) {
  auto counts = [](const std::vector<std::size_t>& c) {
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "+" : "") + std::to_string(c[k]);
    return s;
  };
  out << "w1,pga_coverage,pga_total,pga_N,pga_seconds,random_coverage,random_total,random_team,"
         "corner_coverage,corner_total,corner_team,random_seconds,corner_seconds\n";
  for (const ComparisonRow& r : cmp.rows) {
    out << r.w1 << ',' << r.pga.coverage << ',' << r.pga.total << ',' << r.pga_team_size << ','
        << r.pga_seconds << ',' << r.random_best.coverage << ',' << r.random_best.total << ','
        << counts(r.random_best_counts) << ',' << r.corner_best.coverage << ',' << r.corner_best.total << ','
        << counts(r.corner_best_counts) << ',' << cmp.random.seconds << ',' << cmp.corner.seconds << '\n';
  }
}

}  // namespace teamcov
