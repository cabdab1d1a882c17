#include "teamcov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "teamcov/diagnostics.hpp"
#include "teamcov/errors.hpp"

namespace teamcov {
namespace {

// Entries of one footprint that fall inside another: position in the host
// footprint and the guest's detection probability there.
struct Overlap {
  std::vector<std::uint32_t> pos;
  std::vector<double> prob;
};

Overlap intersect(const Footprint& host, const Footprint& guest) {
  Overlap out;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < host.nodes.size() && b < guest.nodes.size()) {
    if (host.nodes[a] < guest.nodes[b]) {
      ++a;
    } else if (guest.nodes[b] < host.nodes[a]) {
      ++b;
    } else {
      out.pos.push_back(static_cast<std::uint32_t>(a));
      out.prob.push_back(guest.probs[b]);
      ++a;
      ++b;
    }
  }
  return out;
}

std::vector<double> footprint_weights(const FootprintTable& table, const Footprint& fp) {
  const auto& mass = table.environment().node_masses();
  std::vector<double> w(fp.nodes.size());
  for (std::size_t k = 0; k < fp.nodes.size(); ++k) w[k] = mass[fp.nodes[k]] * fp.probs[k];
  return w;
}

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

double multinomial(const std::vector<std::size_t>& counts) {
  double r = 1.0;
  std::size_t total = 0;
  for (std::size_t c : counts) {
    total += c;
    r *= binomial(total, c);
  }
  return r;
}

// Advances a sorted k-combination of {0..n-1}; false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void warn_degenerate(std::size_t point, std::size_t cls) {
  std::ostringstream msg;
  msg << "ground point " << point << " (class " << cls
      << ") has zero stand-alone gain and is left out of the curvature";
  warn(msg.str());
}

}  // namespace

const char* to_string(PartialMode mode) {
  switch (mode) {
    case PartialMode::automatic: return "automatic";
    case PartialMode::exact: return "exact";
    case PartialMode::conservative: return "conservative";
  }
  return "unknown";
}

double bound_conventional(std::size_t N) {
  if (N == 0) throw ParameterError("bound_conventional: N must be at least 1");
  const double n = static_cast<double>(N);
  return 1.0 - std::pow(1.0 - 1.0 / n, n);
}

double bound_from_curvature(double alpha, std::size_t N, CurvatureKind kind) {
  if (N == 0) throw ParameterError("bound_from_curvature: N must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("curvature must lie in [0, 1]");
  const double n = static_cast<double>(N);
  if (kind == CurvatureKind::greedy) return 1.0 - alpha * (1.0 - 1.0 / n);
  // (1/a)(1 - (1 - a/N)^N) = -expm1(N log1p(-a/N)) / a, stable for small a.
  if (alpha < 1e-12) return 1.0;
  return -std::expm1(n * std::log1p(-alpha / n)) / alpha;
}

double total_curvature(const FootprintTable& table) {
  if (table.classes() != 1) {
    throw PreconditionError("total curvature is only defined for a homogeneous roster");
  }
  const std::size_t n = table.points();
  const std::size_t nodes = table.environment().grid().size();
  // Per node: number of exactly-zero miss factors and the product of the rest,
  // so that every leave-one-out product is available without division by zero.
  std::vector<std::uint32_t> zeros(nodes, 0);
  std::vector<double> prod(nodes, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Footprint& fp = table.at(j, 0);
    for (std::size_t k = 0; k < fp.nodes.size(); ++k) {
      const double f = 1.0 - fp.probs[k];
      if (f == 0.0) {
        ++zeros[fp.nodes[k]];
      } else {
        prod[fp.nodes[k]] *= f;
      }
    }
  }
  const auto& mass = table.environment().node_masses();
  double alpha = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Footprint& fp = table.at(j, 0);
    double alone = 0.0;
    double rest = 0.0;
    for (std::size_t k = 0; k < fp.nodes.size(); ++k) {
      const NodeIndex node = fp.nodes[k];
      const double w = mass[node] * fp.probs[k];
      const double f = 1.0 - fp.probs[k];
      double others;
      if (f == 0.0) {
        others = zeros[node] > 1 ? 0.0 : prod[node];
      } else {
        others = zeros[node] > 0 ? 0.0 : prod[node] / f;
      }
      alone += w;
      rest += w * others;
    }
    if (!(alone > 0.0)) {
      warn_degenerate(j, 0);
      continue;
    }
    alpha = std::max(alpha, 1.0 - rest / alone);
  }
  return std::clamp(alpha, 0.0, 1.0);
}

double total_curvature(const Environment& env, const GroundSet& ground, const AgentClass& cls) {
  const AgentClass classes[] = {cls};
  return total_curvature(FootprintTable(env, ground.points, classes));
}

std::size_t partial_curvature_cost(std::size_t ground_size, const Roster& roster) {
  const std::size_t N = roster.size();
  if (N == 0 || ground_size == 0) return 0;
  const double combos = binomial(ground_size - 1, N - 1);
  double total = 0.0;
  for (std::size_t c = 0; c < roster.classes.size(); ++c) {
    if (roster.counts[c] == 0) continue;
    std::vector<std::size_t> rest = roster.counts;
    --rest[c];
    total += static_cast<double>(ground_size) * combos * multinomial(rest);
  }
  if (total >= static_cast<double>(std::numeric_limits<std::size_t>::max())) {
    return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(total);
}

namespace {

PartialCurvature partial_exact(const FootprintTable& table, const Roster& roster) {
  const std::size_t n = table.points();
  const std::size_t nc = table.classes();
  const std::size_t N = roster.size();
  PartialCurvature out;
  out.mode = PartialMode::exact;

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (roster.counts[c] == 0) continue;
      const Footprint& host = table.at(j, c);
      const std::vector<double> w = footprint_weights(table, host);
      const double alone = sum_of(w);
      if (!(alone > 0.0)) {
        warn_degenerate(j, c);
        continue;
      }
      // Other points, their overlaps with the host footprint per class.
      std::vector<std::size_t> others;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) others.push_back(k);
      }
      std::vector<Overlap> overlap(others.size() * nc);
      for (std::size_t o = 0; o < others.size(); ++o) {
        for (std::size_t cc = 0; cc < nc; ++cc) overlap[o * nc + cc] = intersect(host, table.at(others[o], cc));
      }
      // Classes still to place after x takes one of class c.
      std::vector<std::size_t> assignment;
      for (std::size_t cc = 0; cc < nc; ++cc) {
        const std::size_t count = roster.counts[cc] - (cc == c ? 1 : 0);
        assignment.insert(assignment.end(), count, cc);
      }
      std::vector<double> miss(host.nodes.size());
      std::vector<std::size_t> combo(N - 1);
      std::iota(combo.begin(), combo.end(), std::size_t{0});
      do {
        std::vector<std::size_t> perm = assignment;
        do {
          std::fill(miss.begin(), miss.end(), 1.0);
          for (std::size_t b = 0; b < combo.size(); ++b) {
            const Overlap& ov = overlap[combo[b] * nc + perm[b]];
            for (std::size_t q = 0; q < ov.pos.size(); ++q) miss[ov.pos[q]] *= 1.0 - ov.prob[q];
          }
          double gain = 0.0;
          for (std::size_t q = 0; q < w.size(); ++q) gain += w[q] * miss[q];
          out.alpha = std::max(out.alpha, 1.0 - gain / alone);
          ++out.evaluations;
        } while (std::next_permutation(perm.begin(), perm.end()));
      } while (!combo.empty() && next_combination(combo, others.size()));
    }
  }
  out.alpha = std::clamp(out.alpha, 0.0, 1.0);
  return out;
}

PartialCurvature partial_conservative(const FootprintTable& table, const Roster& roster) {
  const std::size_t n = table.points();
  const std::size_t nc = table.classes();
  const std::size_t keep = roster.size() - 1;
  PartialCurvature out;
  out.mode = PartialMode::conservative;
  if (keep == 0) return out;

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (roster.counts[c] == 0) continue;
      const Footprint& host = table.at(j, c);
      const std::vector<double> w = footprint_weights(table, host);
      const double alone = sum_of(w);
      if (!(alone > 0.0)) {
        warn_degenerate(j, c);
        continue;
      }
      const std::size_t m = host.nodes.size();
      // top[q * keep ...] holds the `keep` largest probabilities at host node q,
      // in descending order.
      std::vector<double> top(m * keep, 0.0);
      std::vector<double> best(m, 0.0);
      std::vector<std::uint32_t> touched;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        for (std::size_t cc = 0; cc < nc; ++cc) {
          const Overlap ov = intersect(host, table.at(k, cc));
          for (std::size_t q = 0; q < ov.pos.size(); ++q) {
            if (best[ov.pos[q]] == 0.0) touched.push_back(ov.pos[q]);
            best[ov.pos[q]] = std::max(best[ov.pos[q]], ov.prob[q]);
          }
        }
        for (std::uint32_t q : touched) {
          double v = best[q];
          best[q] = 0.0;
          double* slot = &top[q * keep];
          if (v <= slot[keep - 1]) continue;
          std::size_t s = keep - 1;
          while (s > 0 && slot[s - 1] < v) {
            slot[s] = slot[s - 1];
            --s;
          }
          slot[s] = v;
        }
        touched.clear();
      }
      double gain = 0.0;
      for (std::size_t q = 0; q < m; ++q) {
        double f = 1.0;
        for (std::size_t s = 0; s < keep; ++s) f *= 1.0 - top[q * keep + s];
        gain += w[q] * f;
      }
      out.alpha = std::max(out.alpha, 1.0 - gain / alone);
    }
  }
  out.alpha = std::clamp(out.alpha, 0.0, 1.0);
  return out;
}

}  // namespace

PartialCurvature partial_curvature(const FootprintTable& table, const Roster& roster,
                                   PartialMode mode, std::size_t budget) {
  if (table.classes() != roster.classes.size()) {
    throw PreconditionError("partial_curvature: footprint classes do not match the roster");
  }
  const std::size_t N = roster.size();
  if (N == 0) throw ParameterError("partial_curvature: empty roster");
  if (N > table.points()) throw PreconditionError("partial_curvature: roster larger than the ground set");
  const std::size_t cost = partial_curvature_cost(table.points(), roster);
  if (mode == PartialMode::automatic) mode = cost <= budget ? PartialMode::exact : PartialMode::conservative;
  if (mode == PartialMode::exact) {
    if (cost > budget) {
      throw BudgetExceeded("exact partial curvature needs " + std::to_string(cost) +
                           " evaluations, over the budget of " + std::to_string(budget));
    }
    return partial_exact(table, roster);
  }
  return partial_conservative(table, roster);
}

double greedy_curvature(const GreedySolution& sol) {
  if (sol.candidate_gains.size() != sol.steps.size() || sol.candidate_gains.empty()) {
    throw PreconditionError("greedy curvature needs the cached candidate gains of every step");
  }
  const std::vector<double>& first = sol.candidate_gains.front();
  double alpha = 0.0;
  for (const auto& row : sol.candidate_gains) {
    if (row.size() != first.size()) throw PreconditionError("greedy curvature: ragged gain cache");
    for (std::size_t q = 0; q < row.size(); ++q) {
      if (std::isnan(row[q]) || !(first[q] > 0.0)) continue;
      alpha = std::max(alpha, 1.0 - row[q] / first[q]);
    }
  }
  return std::clamp(alpha, 0.0, 1.0);
}

BoundReport compute_bound_report(const FootprintTable& table, const Roster& roster,
                                 const GreedySolution& sol, PartialMode mode, std::size_t budget) {
  BoundReport rep;
  rep.rank = roster.size();
  rep.homogeneous = roster.homogeneous();
  rep.L_C = bound_conventional(rep.rank);

  if (rep.homogeneous) {
    rep.alpha_T = total_curvature(table);
    rep.L_T = bound_from_curvature(*rep.alpha_T, rep.rank, CurvatureKind::total);
  } else {
    rep.method_notes.push_back("L_T omitted: total curvature is undefined for a heterogeneous roster");
  }

  const PartialCurvature pc = partial_curvature(table, roster, mode, budget);
  rep.alpha_P = pc.alpha;
  rep.alpha_P_mode = pc.mode;
  rep.L_P = bound_from_curvature(pc.alpha, rep.rank, CurvatureKind::partial);
  if (pc.mode == PartialMode::exact) {
    rep.method_notes.push_back("alpha_P exact: " + std::to_string(pc.evaluations) + " context sets enumerated");
  } else {
    rep.method_notes.push_back(
        "alpha_P conservative: pointwise worst-case overlap estimate, an upper bound on the exact value");
  }

  rep.alpha_G = greedy_curvature(sol);
  rep.L_G = bound_from_curvature(*rep.alpha_G, rep.rank, CurvatureKind::greedy);
  if (!rep.homogeneous) {
    rep.method_notes.push_back(
        "L_G reported for a heterogeneous roster; its validity there is contested (one reading "
        "treats it as undefined, another as still holding)");
  }

  rep.L_overall = std::max({*rep.L_C, rep.L_T.value_or(0.0), *rep.L_P, *rep.L_G});
  return rep;
}

PostBound post_pga_bound(const Environment& env, const GroundSet& ground,
                         std::span<const Placement> pga_team, PartialMode mode, std::size_t budget) {
  if (pga_team.empty()) throw PreconditionError("post-PGA bound needs at least one selected agent");
  std::vector<Vec2> points = ground.points;
  Roster roster;
  for (const Placement& p : pga_team) {
    roster.add(p.cls, 1);
    const bool known = std::any_of(points.begin(), points.end(),
                                   [&](Vec2 q) { return distance(p.point, q) <= kGeomEps; });
    if (!known) points.push_back(p.point);
  }

  const FootprintTable table(env, points, roster.classes);
  GreedySolution sol = greedy_place(table, roster);
  for (GreedyStep& s : sol.steps) s.position = points[s.point];

  PostBound out;
  out.ground2_size = points.size();
  out.bounds2 = compute_bound_report(table, roster, sol, mode, budget);
  out.L2 = std::max({*out.bounds2.L_C, *out.bounds2.L_P, *out.bounds2.L_G});
  out.greedy2_value = sol.value();
  out.pga_value = set_coverage(env, pga_team);
  out.L_prime = out.greedy2_value > 0.0 ? out.L2 * out.pga_value / out.greedy2_value : out.L2;
  return out;
}

}  // namespace teamcov
