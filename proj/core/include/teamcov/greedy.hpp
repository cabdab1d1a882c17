#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "teamcov/field.hpp"
#include "teamcov/grid.hpp"
#include "teamcov/sensing.hpp"

namespace teamcov {

/// Discretized candidate locations for the set-function formulation.
struct GroundSet {
  std::vector<Vec2> points;
  std::size_t rank = 0;
  int lattice = 0;

  std::size_t size() const { return points.size(); }
};

/// k x k lattice over the bounding box of the space; infeasible lattice
/// points are projected onto the feasible region and duplicates removed.
/// Throws ParameterError when fewer than `rank` points remain.
GroundSet build_ground_set(const MissionSpace& space, int lattice, std::size_t rank);

/// Unit-membership detection footprint of one (point, class) pair: the
/// visible nodes and p-hat at each of them.
struct Footprint {
  std::vector<NodeIndex> nodes;
  std::vector<double> probs;
};

/// Footprints for every ground point and every roster class, computed once.
class FootprintTable {
 public:
  FootprintTable(const Environment& env, std::span<const Vec2> points,
                 std::span<const AgentClass> classes);

  std::size_t points() const { return points_; }
  std::size_t classes() const { return classes_; }
  const Footprint& at(std::size_t point, std::size_t cls) const {
    return table_[point * classes_ + cls];
  }

  /// sum over the footprint of R * cell_area * p * miss(node)
  double gain(std::size_t point, std::size_t cls, std::span<const double> miss) const;
  /// miss(node) *= 1 - p over the footprint.
  void apply(std::size_t point, std::size_t cls, std::span<double> miss) const;

  const Environment& environment() const { return *env_; }

 private:
  const Environment* env_;
  std::size_t points_;
  std::size_t classes_;
  std::vector<Footprint> table_;
};

/// Marginal coverage gain of adding an agent of class `cls` at x to the
/// placement A.
double discrete_derivative(const Environment& env, std::span<const Placement> placed, Vec2 x,
                           const AgentClass& cls);

struct GreedyStep {
  std::size_t point = 0;   ///< ground-set index
  std::size_t cls = 0;     ///< roster class index
  Vec2 position;
  double gain = 0.0;
  double value = 0.0;      ///< H(S^i) after this step
};

struct GreedySolution {
  std::vector<GreedyStep> steps;
  /// candidate_gains[i][j * classes + c] = gain of (point j, class c) given
  /// S^i, or NaN when the pair was not a valid candidate at step i.
  std::vector<std::vector<double>> candidate_gains;
  std::vector<AgentClass> classes;
  std::size_t ground_size = 0;

  std::size_t rank() const { return steps.size(); }
  double value() const { return steps.empty() ? 0.0 : steps.back().value; }
  std::vector<Placement> placements() const;
};

/// Greedy placement of the whole roster on the ground set. Each iteration
/// picks the (point, class) pair with the largest marginal gain; ties go to
/// the lowest point index, then the lowest class index.
GreedySolution greedy_place(const Environment& env, const GroundSet& ground, const Roster& roster);
GreedySolution greedy_place(const FootprintTable& table, const Roster& roster);

/// CSV: iteration,x,y,class,gain,value
void write_greedy_trace_csv(std::ostream& out, const GreedySolution& sol);

}  // namespace teamcov
