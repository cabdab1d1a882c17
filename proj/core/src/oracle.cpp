#include "teamcov/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>

#include "teamcov/errors.hpp"

namespace teamcov {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double choose(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vec2 random_feasible(const MissionSpace& space, std::mt19937_64& rng) {
  const BoundingBox& bb = space.bounds();
  std::uniform_real_distribution<double> ux(bb.lo.x, bb.hi.x);
  std::uniform_real_distribution<double> uy(bb.lo.y, bb.hi.y);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Vec2 p{ux(rng), uy(rng)};
    if (is_feasible(space, p)) return p;
  }
  throw PreconditionError("could not sample a feasible point; the feasible region is too thin");
}

}  // namespace

void OracleBudget::validate() const {
  if (max_subsets == 0) throw ParameterError("oracle max_subsets must be positive");
  if (restarts == 0) throw ParameterError("oracle restarts must be positive");
}

SetOptimum exhaustive_set_optimum(const FootprintTable& table, const Roster& roster,
                                  const OracleBudget& budget) {
  budget.validate();
  if (table.classes() != roster.classes.size()) {
    throw PreconditionError("exhaustive_set_optimum: footprint classes do not match the roster");
  }
  const std::size_t n = table.points();
  const std::size_t N = roster.size();
  if (N == 0 || N > n) throw PreconditionError("exhaustive_set_optimum: need 1 <= N <= ground size");

  std::vector<std::size_t> assignment = roster.agent_class_indices();
  double assignments = 1.0;
  {
    std::size_t total = 0;
    for (std::size_t c : roster.counts) {
      total += c;
      assignments *= choose(total, c);
    }
  }
  const double work = choose(n, N) * assignments;
  if (work > static_cast<double>(budget.max_subsets)) {
    throw BudgetExceeded("exhaustive search over " + std::to_string(static_cast<long long>(work)) +
                         " placements exceeds the budget of " + std::to_string(budget.max_subsets) +
                         "; shrink the ground set or the roster");
  }

  const auto& mass = table.environment().node_masses();
  std::vector<double> miss(table.environment().grid().size(), 1.0);
  std::vector<NodeIndex> touched;

  SetOptimum best;
  best.value = -1.0;
  std::vector<std::size_t> combo(N);
  std::iota(combo.begin(), combo.end(), std::size_t{0});
  while (true) {
    std::vector<std::size_t> perm = assignment;
    do {
      for (std::size_t b = 0; b < N; ++b) {
        const Footprint& fp = table.at(combo[b], perm[b]);
        for (std::size_t k = 0; k < fp.nodes.size(); ++k) {
          double& m = miss[fp.nodes[k]];
          if (m == 1.0) touched.push_back(fp.nodes[k]);
          m *= 1.0 - fp.probs[k];
        }
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      double value = 0.0;
      for (NodeIndex node : touched) {
        value += mass[node] * (1.0 - miss[node]);
        miss[node] = 1.0;
      }
      touched.clear();
      ++best.evaluated;
      if (value > best.value) {
        best.value = value;
        best.points = combo;
        best.classes = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::size_t i = N;
    while (i > 0 && combo[i - 1] == n - N + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < N; ++j) combo[j] = combo[j - 1] + 1;
  }
  return best;
}

SetOptimum exhaustive_set_optimum(const Environment& env, const GroundSet& ground, const Roster& roster,
                                  const OracleBudget& budget) {
  return exhaustive_set_optimum(FootprintTable(env, ground.points, roster.classes), roster, budget);
}

const char* to_string(InitMode mode) {
  return mode == InitMode::random ? "random" : "corner";
}

std::size_t composition_count(const Roster& roster) {
  std::size_t count = 1;
  for (std::size_t c : roster.counts) count *= c + 1;
  return count - 1;
}

void rescore(BaselineReport& report, const Roster& roster, const CostModel& model) {
  const std::size_t nc = roster.classes.size();
  std::vector<double> class_gamma(nc, 0.0);
  {
    const auto idx = roster.agent_class_indices();
    for (std::size_t a = 0; a < idx.size(); ++a) class_gamma[idx[a]] = model.gammas[a];
  }
  for (std::size_t k = 0; k < report.compositions.size(); ++k) {
    CompositionResult& r = report.compositions[k];
    double g = 0.0;
    for (std::size_t c = 0; c < nc; ++c) g += class_gamma[c] * static_cast<double>(r.counts[c]);
    r.cost = model.beta * g;
    r.total = r.coverage - r.cost;
    if (k == 0 || r.total > report.compositions[report.best].total) report.best = k;
  }
}

BaselineReport exhaustive_team_baseline(const Environment& env, const Roster& roster,
                                        const CostModel& model, const OracleBudget& budget,
                                        InitMode mode, const PgaConfig& cfg) {
  budget.validate();
  const std::size_t nc = roster.classes.size();
  if (model.gammas.size() != roster.size()) {
    throw PreconditionError("baseline cost model must cover the full roster");
  }
  const std::size_t total = composition_count(roster);
  if (total > budget.max_subsets) {
    throw BudgetExceeded(std::to_string(total) + " team compositions exceed the budget of " +
                         std::to_string(budget.max_subsets));
  }
  if (roster.size() > 64) throw ParameterError("baseline bitmask supports at most 64 agents");

  PgaConfig inner = cfg;
  inner.optimize_memberships = false;
  inner.resolve_degenerate = false;

  // First roster agent index of each class.
  std::vector<std::size_t> first(nc, 0);
  for (std::size_t c = 1; c < nc; ++c) first[c] = first[c - 1] + roster.counts[c - 1];

  BaselineReport report;
  report.mode = mode;
  report.seed = budget.seed;
  const auto start = Clock::now();

  std::vector<std::size_t> counts(nc, 0);
  for (std::size_t index = 0; index < total; ++index) {
    // Odometer over class counts; the all-zero team is skipped.
    for (std::size_t c = 0; c < nc; ++c) {
      if (++counts[c] <= roster.counts[c]) break;
      counts[c] = 0;
    }
    const auto comp_start = Clock::now();
    CompositionResult r;
    r.counts = counts;
    TeamState team;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t a = 0; a < counts[c]; ++a) {
        r.bitmask |= std::uint64_t{1} << (first[c] + a);
        team.classes.push_back(roster.classes[c]);
        team.memberships.push_back(1.0);
      }
    }
    team.positions.resize(team.classes.size());
    CostModel sub;
    sub.w1 = model.w1;
    sub.total_density = model.total_density;
    sub.beta = model.beta;
    sub.gammas = team.gammas();

    const std::size_t runs = mode == InitMode::random ? budget.restarts : 1;
    bool have = false;
    for (std::size_t run = 0; run < runs; ++run) {
      if (mode == InitMode::random) {
        std::mt19937_64 rng(splitmix(budget.seed ^ splitmix(index * 1000003ULL + run)));
        for (Vec2& p : team.positions) p = random_feasible(env.space(), rng);
      } else {
        const Vec2 lo = env.space().bounds().lo;
        for (std::size_t l = 0; l < team.size(); ++l) {
          const double off = 5.0 + 5.0 * static_cast<double>(l + 1);
          team.positions[l] = project_to_feasible(env.space(), lo + Vec2{off, off});
        }
      }
      PgaResult res = pga_run(env, team, sub, inner);
      r.iterations += res.trace.iterations;
      const ObjectiveBreakdown& o = res.trace.rows.back().objective;
      if (!have || o.coverage > r.coverage) {
        have = true;
        r.coverage = o.coverage;
        r.state = std::move(res.state);
      }
    }
    r.seconds = seconds_since(comp_start);
    report.compositions.push_back(std::move(r));
  }
  report.seconds = seconds_since(start);
  rescore(report, roster, model);
  return report;
}

void write_baseline_csv(std::ostream& out, const BaselineReport& report, std::size_t classes) {
  for (std::size_t c = 0; c < classes; ++c) out << "class" << c << "_count,";
  out << "bitmask,coverage,cost,total,iterations,seconds\n";
  for (const CompositionResult& r : report.compositions) {
    for (std::size_t c = 0; c < classes; ++c) out << r.counts[c] << ',';
    out << r.bitmask << ',' << r.coverage << ',' << r.cost << ',' << r.total << ',' << r.iterations
        << ',' << r.seconds << '\n';
  }
}

}  // namespace teamcov
