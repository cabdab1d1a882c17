#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teamcov/bounds.hpp"
#include "teamcov/oracle.hpp"
#include "teamcov/pga.hpp"
#include "teamcov/scenario.hpp"

namespace teamcov {

/// Memberships at or above this count as "in the team" after ascent.
inline constexpr double kSelectedThreshold = 0.5;

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  double w1 = 0.0;
  double beta = 0.0;
  double total_density = 0.0;
  std::size_t ground_size = 0;

  GreedySolution greedy;
  ObjectiveBreakdown greedy_objective;  ///< greedy placement, every t = 1
  double greedy_seconds = 0.0;

  BoundReport bounds;

  TeamState initial;
  TeamState final_state;
  PgaTrace trace;
  ObjectiveBreakdown pga_objective;
  double pga_seconds = 0.0;
  /// Selected agents per roster class.
  std::vector<std::size_t> team_by_class;
  std::size_t final_team_size = 0;

  /// Absent when ascent dropped every agent.
  std::optional<PostBound> post;

  /// w1 / total_density * H(s, t), the convex-combination form.
  double normalized(const ObjectiveBreakdown& o) const;
};

/// Greedy placement, bounds, ascent from the greedy placement with t = 1,
/// degenerate-membership resolution and the post-ascent bound.
RunReport run_pipeline(const Scenario& scenario);

struct SweepRow {
  double w1 = 0.0;
  ObjectiveBreakdown objective;
  std::size_t final_team_size = 0;
};

/// Runs the pipeline once per weight. Throws ParameterError for a weight
/// outside (0, 1].
std::vector<SweepRow> sweep_w1(const Scenario& scenario, std::span<const double> w1_values);

struct ComparisonRow {
  double w1 = 0.0;
  ObjectiveBreakdown pga;
  std::size_t pga_team_size = 0;
  double pga_seconds = 0.0;  ///< greedy plus ascent
  ObjectiveBreakdown random_best;
  std::vector<std::size_t> random_best_counts;
  ObjectiveBreakdown corner_best;
  std::vector<std::size_t> corner_best_counts;
};

struct OracleComparison {
  BaselineReport random;
  BaselineReport corner;
  std::vector<ComparisonRow> rows;
};

/// Pipeline against the exhaustive team baseline on an obstacle-free space.
/// The baseline runs once per init mode and is rescored for every weight.
/// Throws PreconditionError when the scenario has obstacles.
OracleComparison compare_oracle(const Scenario& scenario, std::span<const double> w1_values);

}  // namespace teamcov
