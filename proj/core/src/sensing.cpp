#include "teamcov/sensing.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "teamcov/diagnostics.hpp"
#include "teamcov/errors.hpp"

namespace teamcov {

double AgentClass::kappa() const { return sensing_capability(*this); }

AgentClass make_agent_class(double p0, double lambda, double delta, double w2) {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw ParameterError("p0 must lie in (0, 1]");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be positive");
  if (!(w2 > 0.0) || !std::isfinite(w2)) throw ParameterError("w2 must be positive");
  if (w2 > 1.0) {
    std::ostringstream msg;
    msg << "cost weight w2 = " << w2 << " exceeds 1";
    warn(msg.str());
  }
  return AgentClass{p0, lambda, delta, w2};
}

double detection_probability(const AgentClass& cls, Vec2 x, Vec2 s) {
  return cls.p0 * std::exp(-cls.lambda * distance(x, s));
}

double constrained_detection(const AgentClass& cls, const VisibilityRegion& vis,
                             const MissionSpace& space, Vec2 x, double t) {
  if (t == 0.0 || !visible_from(space, vis.anchor, vis.radius, x)) return 0.0;
  return t * detection_probability(cls, x, vis.anchor);
}

double constrained_detection(const AgentClass& cls, const VisibilityRegion& vis, NodeIndex node,
                             double t) {
  const std::size_t k = vis.find(node);
  if (t == 0.0 || k == vis.nodes.size()) return 0.0;
  return t * cls.p0 * std::exp(-cls.lambda * vis.distances[k]);
}

double sensing_capability(const AgentClass& cls) {
  const double ld = cls.lambda * cls.delta;
  // 1 - (1 + x) e^{-x} loses all precision for small x; use the series there.
  double bracket;
  if (ld < 1e-3) {
    bracket = ld * ld * (0.5 - ld / 3.0 + ld * ld / 8.0);
  } else {
    bracket = -std::expm1(-ld) - ld * std::exp(-ld);
  }
  return 2.0 * std::numbers::pi * cls.p0 / (cls.lambda * cls.lambda) * bracket;
}

double normalization_beta(double w1, double total_density, double sum_gamma) {
  if (!(w1 > 0.0 && w1 <= 1.0)) throw ParameterError("w1 must lie in (0, 1]");
  if (!(sum_gamma > 0.0)) throw ParameterError("sum of agent costs must be positive");
  if (!(total_density >= 0.0)) throw ParameterError("total density must be non-negative");
  return (1.0 - w1) / w1 * total_density / sum_gamma;
}

CostModel CostModel::make(double w1, double total_density, std::vector<double> gammas) {
  CostModel m;
  m.w1 = w1;
  m.total_density = total_density;
  m.gammas = std::move(gammas);
  m.beta = normalization_beta(w1, total_density, m.sum_gamma());
  return m;
}

double CostModel::sum_gamma() const { return std::accumulate(gammas.begin(), gammas.end(), 0.0); }

double CostModel::cost(std::span<const double> memberships) const {
  if (memberships.size() != gammas.size()) {
    throw PreconditionError("cost: membership count does not match the roster");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) acc += gammas[i] * memberships[i];
  return beta * acc;
}

void TeamState::validate(const MissionSpace& space) const {
  if (memberships.size() != positions.size() || classes.size() != positions.size()) {
    throw PreconditionError("team state arrays differ in length");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!(memberships[i] >= 0.0 && memberships[i] <= 1.0)) {
      throw PreconditionError("membership of agent " + std::to_string(i) + " outside [0, 1]");
    }
    if (!is_feasible(space, positions[i])) {
      throw PreconditionError("agent " + std::to_string(i) + " is outside the feasible region");
    }
  }
}

std::vector<double> TeamState::gammas() const {
  std::vector<double> g;
  g.reserve(classes.size());
  for (const AgentClass& c : classes) g.push_back(c.gamma());
  return g;
}

void Roster::add(const AgentClass& cls, std::size_t count) {
  if (count == 0) return;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c] == cls) {
      counts[c] += count;
      return;
    }
  }
  classes.push_back(cls);
  counts.push_back(count);
}

std::size_t Roster::size() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::vector<AgentClass> Roster::agents() const {
  std::vector<AgentClass> out;
  for (std::size_t c = 0; c < classes.size(); ++c) out.insert(out.end(), counts[c], classes[c]);
  return out;
}

std::vector<std::size_t> Roster::agent_class_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes.size(); ++c) out.insert(out.end(), counts[c], c);
  return out;
}

std::size_t Roster::index_of(const AgentClass& cls) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c] == cls) return c;
  }
  return classes.size();
}

}  // namespace teamcov
