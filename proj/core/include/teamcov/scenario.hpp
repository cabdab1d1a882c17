#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "teamcov/bounds.hpp"
#include "teamcov/oracle.hpp"
#include "teamcov/pga.hpp"

namespace teamcov {

inline constexpr std::size_t kMaxRosterSize = 64;

struct DensitySpec {
  enum class Kind { uniform, raster };
  Kind kind = Kind::uniform;
  double value = 1.0;
  // raster only: row-major values, x fastest
  Vec2 origin{};
  double cell = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;
};

/// A complete problem description plus solver settings.
struct Scenario {
  std::string name = "scenario";
  Polygon outer;
  std::vector<Polygon> obstacles;
  DensitySpec density;
  double grid_cell = 10.0;
  int lattice = 10;
  Roster roster;
  double w1 = 0.68;
  PgaConfig pga;
  OracleBudget oracle;
  PartialMode partial_mode = PartialMode::automatic;
  std::size_t partial_budget = kDefaultPartialBudget;
  std::uint64_t seed = 1;

  MissionSpace space() const;
  DensityField density_field() const;
  Environment environment() const;
  /// Cost model over every roster agent, in roster order.
  CostModel cost_model(const Environment& env) const;
  /// Throws ScenarioError (geometry, weights, roster size, solver settings).
  void validate() const;
};

/// Parses and validates a scenario. `source` names the input in error messages.
Scenario parse_scenario(std::string_view json_text, const std::string& source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

}  // namespace teamcov
