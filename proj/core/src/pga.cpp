#include "teamcov/pga.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "teamcov/errors.hpp"
#include "teamcov/parallel.hpp"

namespace teamcov {
namespace {

bool regions_overlap(const VisibilityRegion& a, const VisibilityRegion& b) {
  std::size_t p = 0;
  std::size_t q = 0;
  while (p < a.nodes.size() && q < b.nodes.size()) {
    if (a.nodes[p] < b.nodes[q]) {
      ++p;
    } else if (b.nodes[q] < a.nodes[p]) {
      ++q;
    } else {
      return true;
    }
  }
  return false;
}

// Miss probability of agent i's neighbors at an arbitrary point.
double local_miss_at(const Environment& env, const TeamState& team, const GradientContext& ctx,
                     std::size_t i, Vec2 x) {
  double f = 1.0;
  for (std::size_t k : ctx.graph.adjacency[i]) {
    const double t = team.memberships[k];
    if (t == 0.0) continue;
    const AgentClass& cls = team.classes[k];
    if (!visible_from(env.space(), team.positions[k], cls.delta, x)) continue;
    f *= 1.0 - t * detection_probability(cls, x, team.positions[k]);
  }
  return f;
}

void check_team(const Environment& env, const TeamState& team, const CostModel& model) {
  team.validate(env.space());
  if (model.gammas.size() != team.size()) {
    throw PreconditionError("cost model and team state disagree on the number of agents");
  }
}

double stacked_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

void PgaConfig::validate() const {
  if (!(eta_s > 0.0) || !(eta_t > 0.0)) throw ParameterError("PGA step sizes must be positive");
  if (!(eps_s > 0.0) || !(eps_t > 0.0)) throw ParameterError("PGA tolerances must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ParameterError("backtracking shrink factor must lie in (0, 1)");
  if (!(min_step > 0.0)) throw ParameterError("backtracking minimum step must be positive");
  if (!(max_expansion >= 1.0)) throw ParameterError("max_expansion must be at least 1");
  if (boundary_samples == 0) throw ParameterError("boundary_samples must be positive");
  if (arc_correction && arc_samples == 0) throw ParameterError("arc_samples must be positive");
}

bool NeighborGraph::adjacent(std::size_t i, std::size_t j) const {
  const auto& row = adjacency[i];
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<std::size_t> NeighborGraph::closed(std::size_t i) const {
  std::vector<std::size_t> out = adjacency[i];
  out.insert(std::lower_bound(out.begin(), out.end(), i), i);
  return out;
}

NeighborGraph neighbor_graph(const TeamState& team, std::span<const VisibilityRegion> regions) {
  NeighborGraph g;
  g.adjacency.resize(team.size());
  for (std::size_t i = 0; i < team.size(); ++i) {
    for (std::size_t j = i + 1; j < team.size(); ++j) {
      const double reach = team.classes[i].delta + team.classes[j].delta;
      if (distance(team.positions[i], team.positions[j]) > reach) continue;
      if (!regions_overlap(regions[i], regions[j])) continue;
      g.adjacency[i].push_back(j);
      g.adjacency[j].push_back(i);
    }
  }
  for (auto& row : g.adjacency) std::sort(row.begin(), row.end());
  return g;
}

NeighborGraph neighbor_graph(const Environment& env, const TeamState& team) {
  const auto regions = team_regions(env, team);
  return neighbor_graph(team, regions);
}

GradientContext make_gradient_context(const Environment& env, const TeamState& team) {
  GradientContext ctx;
  ctx.regions = team_regions(env, team, true);
  ctx.graph = neighbor_graph(team, ctx.regions);
  return ctx;
}

std::vector<double> local_miss(const TeamState& team, const GradientContext& ctx, std::size_t i) {
  const VisibilityRegion& host = ctx.regions[i];
  std::vector<double> phi(host.nodes.size(), 1.0);
  for (std::size_t k : ctx.graph.adjacency[i]) {
    const double t = team.memberships[k];
    if (t == 0.0) continue;
    const AgentClass& cls = team.classes[k];
    const VisibilityRegion& other = ctx.regions[k];
    std::size_t p = 0;
    std::size_t q = 0;
    while (p < host.nodes.size() && q < other.nodes.size()) {
      if (host.nodes[p] < other.nodes[q]) {
        ++p;
      } else if (other.nodes[q] < host.nodes[p]) {
        ++q;
      } else {
        phi[p] *= 1.0 - t * cls.p0 * std::exp(-cls.lambda * other.distances[q]);
        ++p;
        ++q;
      }
    }
  }
  return phi;
}

Vec2 gradient_position(const Environment& env, const TeamState& team, const GradientContext& ctx,
                       std::size_t i, const PgaConfig& cfg) {
  const double t = team.memberships[i];
  if (t == 0.0) return {0.0, 0.0};
  const AgentClass& cls = team.classes[i];
  const VisibilityRegion& region = ctx.regions[i];
  const Vec2 s = team.positions[i];
  const QuadratureGrid& grid = env.grid();
  const std::vector<double> phi = local_miss(team, ctx, i);

  Vec2 area{0.0, 0.0};
  for (std::size_t k = 0; k < region.nodes.size(); ++k) {
    const double d = region.distances[k];
    if (d <= 0.0) continue;
    const NodeIndex node = region.nodes[k];
    const double pbar = t * cls.p0 * std::exp(-cls.lambda * d);
    const double w = env.node_mass(node) * phi[k] * (-cls.lambda * pbar) / d;
    area = area + w * (s - grid.node(node));
  }

  // Each shadow segment pivots about its vertex as s moves; a point at
  // distance r past the vertex sweeps outward at speed (r / D)(n . e).
  Vec2 boundary{0.0, 0.0};
  const std::size_t m = cfg.boundary_samples;
  for (const ImpactSegment& seg : region.impact_segments) {
    const double h = seg.length / static_cast<double>(m);
    double integral = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      const double r = (static_cast<double>(q) + 0.5) * h;
      const Vec2 x = seg.at(r);
      const double pbar = t * cls.p0 * std::exp(-cls.lambda * (seg.anchor_distance + r));
      integral += env.density().at(x) * local_miss_at(env, team, ctx, i, x) * pbar * r;
    }
    boundary = boundary + (integral * h / seg.anchor_distance) * seg.normal;
  }

  // The visible part of the sensing circle translates with s.
  Vec2 arc{0.0, 0.0};
  if (cfg.arc_correction) {
    const std::size_t n = cfg.arc_samples;
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double pbar = t * cls.p0 * std::exp(-cls.lambda * cls.delta);
    const bool blank = env.space().blank();
    for (std::size_t q = 0; q < n; ++q) {
      const double ang = (static_cast<double>(q) + 0.5) * dphi;
      const Vec2 dir{std::cos(ang), std::sin(ang)};
      const Vec2 x = s + cls.delta * dir;
      if (!is_feasible(env.space(), x)) continue;
      if (!blank && !segment_clear(env.space(), s, x)) continue;
      const double f = env.density().at(x) * local_miss_at(env, team, ctx, i, x) * pbar;
      arc = arc + (f * cls.delta * dphi) * dir;
    }
  }
  return area + boundary + arc;
}

Vec2 gradient_position(const Environment& env, const TeamState& team, std::size_t i,
                       const PgaConfig& cfg) {
  team.validate(env.space());
  return gradient_position(env, team, make_gradient_context(env, team), i, cfg);
}

double gradient_membership(const Environment& env, const TeamState& team, const GradientContext& ctx,
                           const CostModel& model, std::size_t i) {
  const AgentClass& cls = team.classes[i];
  const VisibilityRegion& region = ctx.regions[i];
  const std::vector<double> phi = local_miss(team, ctx, i);
  double local = 0.0;
  for (std::size_t k = 0; k < region.nodes.size(); ++k) {
    local += env.node_mass(region.nodes[k]) * phi[k] * cls.p0 * std::exp(-cls.lambda * region.distances[k]);
  }
  return local - model.beta * model.gammas[i];
}

double gradient_membership(const Environment& env, const TeamState& team, const CostModel& model,
                           std::size_t i) {
  check_team(env, team, model);
  GradientContext ctx;
  ctx.regions = team_regions(env, team);
  ctx.graph = neighbor_graph(team, ctx.regions);
  return gradient_membership(env, team, ctx, model, i);
}

Decomposition decompose(const Environment& env, const TeamState& team, const CostModel& model,
                        std::size_t i) {
  check_team(env, team, model);
  GradientContext ctx;
  ctx.regions = team_regions(env, team);
  ctx.graph = neighbor_graph(team, ctx.regions);

  Decomposition out;
  out.H_i = gradient_membership(env, team, ctx, model, i);

  TeamState rest;
  std::vector<VisibilityRegion> rest_regions;
  double cost = 0.0;
  for (std::size_t k = 0; k < team.size(); ++k) {
    if (k == i) continue;
    rest.positions.push_back(team.positions[k]);
    rest.memberships.push_back(team.memberships[k]);
    rest.classes.push_back(team.classes[k]);
    rest_regions.push_back(ctx.regions[k]);
    cost += model.gammas[k] * team.memberships[k];
  }
  const auto miss = miss_field(env, rest, rest_regions);
  double coverage = 0.0;
  for (std::size_t k = 0; k < miss.size(); ++k) coverage += env.node_mass(k) * (1.0 - miss[k]);
  out.H_complement = coverage - model.beta * cost;
  return out;
}

namespace {

struct Step {
  TeamState state;
  ObjectiveBreakdown objective;
};

Step take_step(const Environment& env, const TeamState& from, const CostModel& model,
               std::span<const Vec2> gs, std::span<const double> gt, double step_s, double step_t,
               std::span<const VisibilityRegion> same_positions) {
  Step out{from, {}};
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (step_s > 0.0) {
      out.state.positions[i] = project_to_feasible(env.space(), from.positions[i] + step_s * gs[i]);
      if (!is_feasible(env.space(), out.state.positions[i])) {
        throw std::logic_error("projection produced an infeasible position");
      }
    }
    if (step_t > 0.0) out.state.memberships[i] = std::clamp(from.memberships[i] + step_t * gt[i], 0.0, 1.0);
  }
  out.objective = step_s > 0.0 ? evaluate_objective(env, out.state, model)
                               : evaluate_objective(env, out.state, same_positions, model);
  return out;
}

}  // namespace

PgaResult pga_run(const Environment& env, const TeamState& init, const CostModel& model,
                  const PgaConfig& cfg) {
  cfg.validate();
  check_team(env, init, model);
  const std::size_t n = init.size();

  PgaResult res;
  res.state = init;
  ObjectiveBreakdown obj = evaluate_objective(env, res.state, model);
  res.trace.rows.push_back({0, obj, 0.0, 0.0, 0.0, 0.0});

  // Step multipliers persist between iterations: backtracking shrinks them,
  // every accepted step lets them grow back (positions up to 1, memberships
  // up to max_expansion).
  double sigma_s = 1.0;
  double sigma_t = 1.0;
  std::vector<Vec2> gs(n);
  std::vector<double> gt(n);
  // Regions of the current positions, reused while only memberships move.
  std::vector<VisibilityRegion> regions = team_regions(env, res.state);

  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    const double decay = cfg.schedule == StepSchedule::diminishing
                             ? 1.0 / (1.0 + static_cast<double>(k - 1) / 200.0)
                             : 1.0;
    const double eta_s = cfg.eta_s * decay;
    const double eta_t = cfg.optimize_memberships ? cfg.eta_t * decay : 0.0;

    TeamState probe = res.state;
    for (Vec2& p : probe.positions) p = nudge_off_boundary(env.space(), p);
    const GradientContext ctx = make_gradient_context(env, probe);
    parallel_for(n, [&](std::size_t i) {
      gs[i] = gradient_position(env, probe, ctx, i, cfg);
      gt[i] = gradient_membership(env, probe, ctx, model, i);
    });

    // Memberships have an exact gradient, so their stopping test uses the
    // full step; positions use the step actually taken.
    std::vector<double> nominal_dt(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = res.state.memberships[i];
      nominal_dt[i] = std::abs(std::clamp(t + eta_t * gt[i], 0.0, 1.0) - t);
    }

    // Below eps_s a position move cannot matter for convergence, so a joint
    // step that still fails there falls back to memberships alone.
    double gs_max = 0.0;
    for (const Vec2& g : gs) gs_max = std::max(gs_max, norm(g));
    const double min_sigma_s = gs_max > 0.0 ? cfg.eps_s / (eta_s * gs_max) : 1.0;

    bool accepted = false;
    Step next;
    double used_s = 0.0;
    double used_t = 0.0;
    const double sigma_t_before = sigma_t;
    while (sigma_s >= min_sigma_s) {
      used_s = sigma_s * eta_s;
      used_t = sigma_t * eta_t;
      next = take_step(env, res.state, model, gs, gt, used_s, used_t, regions);
      if (!cfg.backtracking || next.objective.total >= obj.total) {
        accepted = true;
        break;
      }
      sigma_s *= cfg.shrink;
      sigma_t *= cfg.shrink;
      if (sigma_s < cfg.min_step && sigma_t < cfg.min_step) break;
    }
    if (!accepted && eta_t > 0.0) {
      // Memberships alone: the objective is exactly linear in each t_i, so
      // this succeeds whenever the membership gradient is informative.
      for (sigma_t = sigma_t_before; sigma_t >= cfg.min_step; sigma_t *= cfg.shrink) {
        used_s = 0.0;
        used_t = sigma_t * eta_t;
        next = take_step(env, res.state, model, gs, gt, 0.0, used_t, regions);
        if (next.objective.total >= obj.total) {
          accepted = true;
          break;
        }
      }
    }
    res.trace.iterations = k;
    if (!accepted) {
      res.trace.stalled = true;
      res.trace.converged = true;
      break;
    }

    std::vector<double> ds(n);
    std::vector<double> dt(n);
    for (std::size_t i = 0; i < n; ++i) {
      ds[i] = distance(next.state.positions[i], res.state.positions[i]);
      dt[i] = std::abs(next.state.memberships[i] - res.state.memberships[i]);
    }
    res.state = std::move(next.state);
    obj = next.objective;
    if (used_s > 0.0) regions = team_regions(env, res.state);
    res.trace.rows.push_back({k, obj, n ? *std::max_element(ds.begin(), ds.end()) : 0.0,
                              n ? *std::max_element(dt.begin(), dt.end()) : 0.0, used_s, used_t});
    sigma_s = std::min(1.0, sigma_s / cfg.shrink);
    sigma_t = std::min(cfg.max_expansion, sigma_t / cfg.shrink);
    if (stacked_norm(ds) <= cfg.eps_s && stacked_norm(nominal_dt) <= cfg.eps_t) {
      res.trace.converged = true;
      break;
    }
  }

  if (cfg.resolve_degenerate && cfg.optimize_memberships) {
    for (std::size_t round = 0; round < n; ++round) {
      const auto degenerate = degenerate_agents(env, res.state, model, cfg);
      if (degenerate.empty()) break;
      res.state = resolve_degenerate_t(env, res.state, model, cfg, degenerate.front(), res.trace);
    }
  }
  return res;
}

std::vector<std::size_t> degenerate_agents(const Environment& env, const TeamState& team,
                                           const CostModel& model, const PgaConfig& cfg) {
  constexpr double kBinaryTol = 1e-3;
  std::vector<std::size_t> out;
  GradientContext ctx;
  ctx.regions = team_regions(env, team);
  ctx.graph = neighbor_graph(team, ctx.regions);
  for (std::size_t i = 0; i < team.size(); ++i) {
    const double t = team.memberships[i];
    if (t <= kBinaryTol || t >= 1.0 - kBinaryTol) continue;
    if (std::abs(gradient_membership(env, team, ctx, model, i)) <= cfg.degeneracy_tolerance()) {
      out.push_back(i);
    }
  }
  return out;
}

TeamState resolve_degenerate_t(const Environment& env, const TeamState& team, const CostModel& model,
                               const PgaConfig& cfg, std::size_t i, PgaTrace& trace) {
  TeamState perturbed = team;
  // The objective is t_i * H_i plus terms free of t_i, so rounding t_i in the
  // direction of H_i's sign cannot lower it.
  perturbed.memberships[i] = gradient_membership(env, team, model, i) > 0.0 ? 1.0 : 0.0;
  PgaConfig inner = cfg;
  inner.resolve_degenerate = false;
  PgaResult rerun = pga_run(env, perturbed, model, inner);

  const std::size_t offset = trace.rows.empty() ? 0 : trace.rows.back().iteration + 1;
  for (PgaTraceRow row : rerun.trace.rows) {
    row.iteration += offset;
    trace.rows.push_back(row);
  }
  trace.iterations += rerun.trace.iterations;
  trace.converged = rerun.trace.converged;
  trace.stalled = trace.stalled || rerun.trace.stalled;
  trace.resolved_agents.push_back(i);
  return rerun.state;
}

void write_pga_trace_csv(std::ostream& out, const PgaTrace& trace) {
  out << "iteration,coverage,cost,total,max_ds,max_dt,step_s,step_t\n";
  for (const PgaTraceRow& r : trace.rows) {
    out << r.iteration << ',' << r.objective.coverage << ',' << r.objective.cost << ','
        << r.objective.total << ',' << r.max_position_step << ',' << r.max_membership_step << ','
        << r.step_s << ',' << r.step_t << '\n';
  }
}

}  // namespace teamcov
