#include "teamcov/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "teamcov/errors.hpp"

namespace teamcov {
namespace {

using nlohmann::json;

Vec2 parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ScenarioError("a point must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Polygon parse_polygon(const json& j) {
  if (!j.is_array()) throw ScenarioError("a polygon must be a list of [x, y] pairs");
  Polygon poly;
  for (const json& p : j) poly.push_back(parse_point(p));
  return poly;
}

json polygon_json(const Polygon& poly) {
  json out = json::array();
  for (Vec2 p : poly) out.push_back({p.x, p.y});
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!keys.count(item.key())) throw ScenarioError("unknown key '" + item.key() + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

PartialMode parse_partial_mode(const std::string& s) {
  if (s == "automatic" || s == "auto") return PartialMode::automatic;
  if (s == "exact") return PartialMode::exact;
  if (s == "conservative") return PartialMode::conservative;
  throw ScenarioError("partial_mode must be automatic, exact or conservative");
}

Scenario parse(const json& root) {
  if (!root.is_object()) throw ScenarioError("scenario must be a JSON object");
  reject_unknown(root,
                 {"name", "space", "density", "grid", "ground", "roster", "weights", "pga", "oracle",
                  "bounds", "seed"},
                 "scenario");
  Scenario sc;
  read(root, "name", sc.name);
  read(root, "seed", sc.seed);

  if (!root.contains("space")) throw ScenarioError("missing 'space'");
  const json& space = root.at("space");
  reject_unknown(space, {"outer", "obstacles"}, "space");
  sc.outer = parse_polygon(space.at("outer"));
  if (space.contains("obstacles")) {
    for (const json& o : space.at("obstacles")) sc.obstacles.push_back(parse_polygon(o));
  }

  if (root.contains("density")) {
    const json& d = root.at("density");
    reject_unknown(d, {"kind", "value", "origin", "cell", "nx", "ny", "values"}, "density");
    const std::string kind = d.value("kind", std::string("uniform"));
    if (kind == "uniform") {
      sc.density.kind = DensitySpec::Kind::uniform;
      read(d, "value", sc.density.value);
    } else if (kind == "grid") {
      sc.density.kind = DensitySpec::Kind::raster;
      sc.density.origin = parse_point(d.at("origin"));
      sc.density.cell = d.at("cell").get<double>();
      sc.density.nx = d.at("nx").get<std::size_t>();
      sc.density.ny = d.at("ny").get<std::size_t>();
      sc.density.values = d.at("values").get<std::vector<double>>();
    } else {
      throw ScenarioError("density kind must be 'uniform' or 'grid'");
    }
  }

  if (root.contains("grid")) {
    reject_unknown(root.at("grid"), {"cell"}, "grid");
    read(root.at("grid"), "cell", sc.grid_cell);
  }
  if (root.contains("ground")) {
    reject_unknown(root.at("ground"), {"lattice"}, "ground");
    read(root.at("ground"), "lattice", sc.lattice);
  }

  if (!root.contains("roster")) throw ScenarioError("missing 'roster'");
  for (const json& entry : root.at("roster")) {
    reject_unknown(entry, {"p0", "lambda", "delta", "w2", "count"}, "roster entry");
    AgentClass defaults;
    const double p0 = entry.value("p0", defaults.p0);
    const double lambda = entry.value("lambda", defaults.lambda);
    const double delta = entry.value("delta", defaults.delta);
    const double w2 = entry.value("w2", defaults.w2);
    const long count = entry.value("count", 1L);
    if (count < 1) throw ScenarioError("roster counts must be at least 1");
    try {
      sc.roster.add(make_agent_class(p0, lambda, delta, w2), static_cast<std::size_t>(count));
    } catch (const ParameterError& e) {
      throw ScenarioError(std::string("roster: ") + e.what());
    }
  }

  if (root.contains("weights")) {
    reject_unknown(root.at("weights"), {"w1"}, "weights");
    read(root.at("weights"), "w1", sc.w1);
  }

  if (root.contains("pga")) {
    const json& p = root.at("pga");
    reject_unknown(p,
                   {"eta_s", "eta_t", "eps_s", "eps_t", "max_iters", "backtracking", "shrink", "min_step",
                    "max_expansion", "boundary_samples", "arc_correction", "arc_samples", "schedule"},
                   "pga");
    read(p, "eta_s", sc.pga.eta_s);
    read(p, "eta_t", sc.pga.eta_t);
    read(p, "eps_s", sc.pga.eps_s);
    read(p, "eps_t", sc.pga.eps_t);
    read(p, "max_iters", sc.pga.max_iters);
    read(p, "backtracking", sc.pga.backtracking);
    read(p, "shrink", sc.pga.shrink);
    read(p, "min_step", sc.pga.min_step);
    read(p, "max_expansion", sc.pga.max_expansion);
    read(p, "boundary_samples", sc.pga.boundary_samples);
    read(p, "arc_correction", sc.pga.arc_correction);
    read(p, "arc_samples", sc.pga.arc_samples);
    if (p.contains("schedule")) {
      const std::string s = p.at("schedule").get<std::string>();
      if (s == "fixed") {
        sc.pga.schedule = StepSchedule::fixed;
      } else if (s == "diminishing") {
        sc.pga.schedule = StepSchedule::diminishing;
      } else {
        throw ScenarioError("pga.schedule must be 'fixed' or 'diminishing'");
      }
    }
  }

  if (root.contains("oracle")) {
    reject_unknown(root.at("oracle"), {"max_subsets", "restarts"}, "oracle");
    read(root.at("oracle"), "max_subsets", sc.oracle.max_subsets);
    read(root.at("oracle"), "restarts", sc.oracle.restarts);
  }
  if (root.contains("bounds")) {
    const json& b = root.at("bounds");
    reject_unknown(b, {"partial_mode", "partial_budget"}, "bounds");
    if (b.contains("partial_mode")) sc.partial_mode = parse_partial_mode(b.at("partial_mode").get<std::string>());
    read(b, "partial_budget", sc.partial_budget);
  }
  sc.oracle.seed = sc.seed;
  return sc;
}

}  // namespace

MissionSpace Scenario::space() const { return MissionSpace(outer, obstacles); }

DensityField Scenario::density_field() const {
  if (density.kind == DensitySpec::Kind::uniform) return DensityField::uniform(density.value);
  return DensityField::raster(density.origin, density.cell, density.nx, density.ny, density.values);
}

Environment Scenario::environment() const { return Environment(space(), grid_cell, density_field()); }

CostModel Scenario::cost_model(const Environment& env) const {
  std::vector<double> gammas;
  for (const AgentClass& c : roster.agents()) gammas.push_back(c.gamma());
  return CostModel::make(w1, env.total_density(), std::move(gammas));
}

void Scenario::validate() const {
  try {
    (void)space();
    (void)density_field();
    PgaConfig p = pga;
    p.validate();
    oracle.validate();
  } catch (const Error& e) {
    throw ScenarioError(e.what());
  }
  if (!(grid_cell > 0.0)) throw ScenarioError("grid.cell must be positive");
  if (lattice < 2) throw ScenarioError("ground.lattice must be at least 2");
  if (!(w1 > 0.0 && w1 <= 1.0)) throw ScenarioError("weights.w1 must lie in (0, 1]");
  const std::size_t n = roster.size();
  if (n == 0) throw ScenarioError("roster is empty");
  if (n > kMaxRosterSize) {
    throw ScenarioError("roster has " + std::to_string(n) + " agents; at most " +
                        std::to_string(kMaxRosterSize) + " are supported");
  }
  if (density.kind == DensitySpec::Kind::uniform && !(density.value > 0.0)) {
    throw ScenarioError("uniform density must be positive");
  }
}

Scenario parse_scenario(std::string_view json_text, const std::string& source) {
  try {
    Scenario sc = parse(json::parse(json_text));
    sc.validate();
    return sc;
  } catch (const json::exception& e) {
    throw ScenarioError(source + ": " + e.what());
  } catch (const ScenarioError& e) {
    throw ScenarioError(source + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string scenario_to_json(const Scenario& sc) {
  json root;
  root["name"] = sc.name;
  root["space"]["outer"] = polygon_json(sc.outer);
  root["space"]["obstacles"] = json::array();
  for (const Polygon& o : sc.obstacles) root["space"]["obstacles"].push_back(polygon_json(o));
  if (sc.density.kind == DensitySpec::Kind::uniform) {
    root["density"] = {{"kind", "uniform"}, {"value", sc.density.value}};
  } else {
    root["density"] = {{"kind", "grid"},
                       {"origin", {sc.density.origin.x, sc.density.origin.y}},
                       {"cell", sc.density.cell},
                       {"nx", sc.density.nx},
                       {"ny", sc.density.ny},
                       {"values", sc.density.values}};
  }
  root["grid"]["cell"] = sc.grid_cell;
  root["ground"]["lattice"] = sc.lattice;
  root["roster"] = json::array();
  for (std::size_t c = 0; c < sc.roster.classes.size(); ++c) {
    const AgentClass& a = sc.roster.classes[c];
    root["roster"].push_back(
        {{"p0", a.p0}, {"lambda", a.lambda}, {"delta", a.delta}, {"w2", a.w2}, {"count", sc.roster.counts[c]}});
  }
  root["weights"]["w1"] = sc.w1;
  root["pga"] = {{"eta_s", sc.pga.eta_s},
                 {"eta_t", sc.pga.eta_t},
                 {"eps_s", sc.pga.eps_s},
                 {"eps_t", sc.pga.eps_t},
                 {"max_iters", sc.pga.max_iters},
                 {"backtracking", sc.pga.backtracking},
                 {"shrink", sc.pga.shrink},
                 {"min_step", sc.pga.min_step},
                 {"max_expansion", sc.pga.max_expansion},
                 {"boundary_samples", sc.pga.boundary_samples},
                 {"arc_correction", sc.pga.arc_correction},
                 {"arc_samples", sc.pga.arc_samples},
                 {"schedule", sc.pga.schedule == StepSchedule::fixed ? "fixed" : "diminishing"}};
  root["oracle"] = {{"max_subsets", sc.oracle.max_subsets}, {"restarts", sc.oracle.restarts}};
  root["bounds"] = {{"partial_mode", to_string(sc.partial_mode)}, {"partial_budget", sc.partial_budget}};
  root["seed"] = sc.seed;
  return root.dump(2);
}

}  // namespace teamcov
