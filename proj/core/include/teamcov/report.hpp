#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "teamcov/pipeline.hpp"

namespace teamcov {

/// Paths of the trace files that accompany a run report.
struct ReportFiles {
  std::string greedy_trace;
  std::string pga_trace;
  std::string team;
};

/// Deterministic JSON: the same scenario and seed give byte-identical output.
/// Wall-clock timings are deliberately left out; see write_timing_json.
void write_run_report_json(std::ostream& out, const RunReport& rep, const ReportFiles& files = {});
void write_timing_json(std::ostream& out, const RunReport& rep);
void write_bound_report_json(std::ostream& out, const BoundReport& rep);

/// Positions, memberships and classes of every agent.
void write_team_json(std::ostream& out, const TeamState& team);

/// Human-readable summary table.
void print_run_summary(std::ostream& out, const RunReport& rep);

/// CSV: w1,coverage,cost,total,N_final
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// CSV with one row per weight: PGA and both baselines.
void write_comparison_csv(std::ostream& out, const OracleComparison& cmp);

}  // namespace teamcov
