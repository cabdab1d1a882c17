#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teamcov/greedy.hpp"

namespace teamcov {

enum class CurvatureKind { total, partial, greedy };

/// How the partial curvature was (or should be) computed. `automatic` picks
/// exact enumeration when it fits the evaluation budget.
enum class PartialMode { automatic, exact, conservative };

const char* to_string(PartialMode mode);

inline constexpr std::size_t kDefaultPartialBudget = 200000;

/// 1 - (1 - 1/N)^N. Throws ParameterError for N = 0.
double bound_conventional(std::size_t N);

/// Total and partial: (1/a)(1 - ((N - a)/N)^N), continuous at a = 0.
/// Greedy: 1 - a(1 - 1/N).
double bound_from_curvature(double alpha, std::size_t N, CurvatureKind kind);

/// Homogeneous only: max over ground points of 1 - dH(x | rest) / dH(x | {}).
/// Throws PreconditionError when the table holds more than one class.
double total_curvature(const FootprintTable& table);
double total_curvature(const Environment& env, const GroundSet& ground, const AgentClass& cls);

struct PartialCurvature {
  double alpha = 0.0;
  PartialMode mode = PartialMode::exact;
  /// Number of (element, context set) ratios evaluated; zero in conservative mode.
  std::size_t evaluations = 0;
};

/// Exhaustive enumeration cost of the exact partial curvature for this roster.
std::size_t partial_curvature_cost(std::size_t ground_size, const Roster& roster);

/// max over independent A and x in A of 1 - dH(x | A - x) / dH(x | {}).
///
/// The conservative estimate replaces the worst context set by the pointwise
/// worst case: at every node it multiplies in the N-1 largest detection
/// probabilities offered by the other ground points (over all classes). This
/// can only overstate the curvature. Forcing `exact` beyond the budget throws
/// BudgetExceeded.
PartialCurvature partial_curvature(const FootprintTable& table, const Roster& roster,
                                   PartialMode mode = PartialMode::automatic,
                                   std::size_t budget = kDefaultPartialBudget);

/// From the gains cached during the greedy run; no new objective evaluations.
/// Throws PreconditionError when the cache is missing.
double greedy_curvature(const GreedySolution& sol);

struct BoundReport {
  std::size_t rank = 0;
  bool homogeneous = true;
  std::optional<double> alpha_T, alpha_P, alpha_G;
  std::optional<double> L_C, L_T, L_P, L_G;
  PartialMode alpha_P_mode = PartialMode::exact;
  double L_overall = 0.0;
  std::vector<std::string> method_notes;
};

/// All bounds for one greedy run. L_T is only produced for homogeneous
/// rosters; L_G is produced for both and flagged in the notes when the roster
/// is heterogeneous.
BoundReport compute_bound_report(const FootprintTable& table, const Roster& roster,
                                 const GreedySolution& sol, PartialMode mode = PartialMode::automatic,
                                 std::size_t budget = kDefaultPartialBudget);

struct PostBound {
  double L2 = 0.0;
  double greedy2_value = 0.0;
  double pga_value = 0.0;
  double L_prime = 0.0;
  std::size_t ground2_size = 0;
  BoundReport bounds2;
};

/// Re-runs greedy for the selected team over the ground set augmented with
/// the PGA positions and scales its bound by H(pga) / H(greedy2).
/// Throws PreconditionError for an empty team.
PostBound post_pga_bound(const Environment& env, const GroundSet& ground,
                         std::span<const Placement> pga_team,
                         PartialMode mode = PartialMode::automatic,
                         std::size_t budget = kDefaultPartialBudget);

}  // namespace teamcov
