#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "teamcov/greedy.hpp"
#include "teamcov/pga.hpp"

namespace teamcov {

struct OracleBudget {
  std::size_t max_subsets = 2000000;
  std::size_t restarts = 5;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SetOptimum {
  std::vector<std::size_t> points;   ///< ground indices
  std::vector<std::size_t> classes;  ///< roster class index per chosen point
  double value = 0.0;
  std::size_t evaluated = 0;
};

/// Best placement of the whole roster on distinct ground points, by brute
/// force over every subset of size N and every assignment of the roster's
/// classes to it. Ties keep the first in enumeration order (lexicographic
/// subsets, then lexicographic assignments). Throws BudgetExceeded when the
/// enumeration would be larger than budget.max_subsets.
SetOptimum exhaustive_set_optimum(const FootprintTable& table, const Roster& roster,
                                  const OracleBudget& budget);
SetOptimum exhaustive_set_optimum(const Environment& env, const GroundSet& ground, const Roster& roster,
                                  const OracleBudget& budget);

enum class InitMode {
  random,  ///< uniform feasible starts, budget.restarts per composition
  corner,  ///< agent l starts at lower-left corner + (5 + 5l, 5 + 5l)
};

const char* to_string(InitMode mode);

struct CompositionResult {
  std::vector<std::size_t> counts;  ///< agents per roster class
  std::uint64_t bitmask = 0;        ///< bit a set when roster agent a is in the team
  double coverage = 0.0;
  double cost = 0.0;
  double total = 0.0;
  std::size_t iterations = 0;
  double seconds = 0.0;
  TeamState state;
};

struct BaselineReport {
  InitMode mode = InitMode::random;
  std::uint64_t seed = 0;
  std::vector<CompositionResult> compositions;
  std::size_t best = 0;
  double seconds = 0.0;
};

/// Number of nonempty sub-teams of the roster, counted by class counts.
std::size_t composition_count(const Roster& roster);

/// For every nonempty composition, position-only ascent with memberships
/// fixed at 1, then scores each with `model` (beta of the full roster). Only
/// the position-related fields of `cfg` are used.
BaselineReport exhaustive_team_baseline(const Environment& env, const Roster& roster,
                                        const CostModel& model, const OracleBudget& budget,
                                        InitMode mode, const PgaConfig& cfg = {});

/// Recomputes cost, total and the best composition under another cost model
/// (coverage does not depend on the weights).
void rescore(BaselineReport& report, const Roster& roster, const CostModel& model);

/// CSV: counts per class, bitmask, coverage, cost, total, iterations, seconds
void write_baseline_csv(std::ostream& out, const BaselineReport& report, std::size_t classes);

}  // namespace teamcov
