#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "teamcov/diagnostics.hpp"
#include "teamcov/errors.hpp"
#include "teamcov/sensing.hpp"

using namespace teamcov;

namespace {

// Composite Simpson rule for the radial integral of 2 pi r p0 exp(-lambda r).
double radial_simpson(const AgentClass& c, int n = 20000) {
  const double h = c.delta / n;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double r = k * h;
    const double f = 2.0 * std::numbers::pi * r * c.p0 * std::exp(-c.lambda * r);
    acc += f * (k == 0 || k == n ? 1.0 : (k % 2 ? 4.0 : 2.0));
  }
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("sensing capability matches radial quadrature") {
  for (const AgentClass& c : {make_agent_class(1.0, 0.012, 200.0), make_agent_class(0.8, 0.03, 50.0),
                              make_agent_class(0.5, 0.001, 300.0)}) {
    CHECK(c.kappa() == doctest::Approx(radial_simpson(c)).epsilon(1e-9));
    CHECK(sensing_capability(c) == c.kappa());
    CHECK(c.gamma() == c.w2 * c.kappa());
  }
}

TEST_CASE("detection probability") {
  const AgentClass c = make_agent_class(0.9, 0.01, 100.0);
  CHECK(detection_probability(c, {0, 0}, {0, 0}) == doctest::Approx(0.9));
  CHECK(detection_probability(c, {30, 40}, {0, 0}) == doctest::Approx(0.9 * std::exp(-0.5)));
}

TEST_CASE("agent class parameter checks") {
  CHECK_THROWS_AS(make_agent_class(0.0, 0.01, 10.0), ParameterError);
  CHECK_THROWS_AS(make_agent_class(1.2, 0.01, 10.0), ParameterError);
  CHECK_THROWS_AS(make_agent_class(1.0, -1.0, 10.0), ParameterError);
  CHECK_THROWS_AS(make_agent_class(1.0, 0.01, 0.0), ParameterError);
  CHECK_THROWS_AS(make_agent_class(1.0, 0.01, 10.0, 0.0), ParameterError);

  std::string seen;
  set_warning_handler([&](std::string_view m) { seen = m; });
  const AgentClass heavy = make_agent_class(1.0, 0.008, 100.0, 1.607);
  set_warning_handler([](std::string_view) {});
  CHECK(heavy.w2 == 1.607);
  CHECK_FALSE(seen.empty());
}

TEST_CASE("cost normalization") {
  const double sum_gamma = 10.0 * make_agent_class(1.0, 0.012, 200.0).gamma();
  const double beta = normalization_beta(0.68, 360000.0, sum_gamma);
  CHECK(beta == doctest::Approx((0.32 / 0.68) * 360000.0 / sum_gamma));
  CHECK(beta == doctest::Approx(0.561).epsilon(0.002));
  CHECK(normalization_beta(1.0, 360000.0, sum_gamma) == 0.0);
  CHECK_THROWS_AS(normalization_beta(0.0, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(normalization_beta(1.5, 1.0, 1.0), ParameterError);

  const CostModel m = CostModel::make(0.5, 100.0, {10.0, 30.0});
  CHECK(m.beta == doctest::Approx(100.0 / 40.0));
  const double t[] = {1.0, 0.5};
  CHECK(m.cost(t) == doctest::Approx(m.beta * 25.0));
}

TEST_CASE("roster bookkeeping") {
  Roster r;
  const AgentClass a = make_agent_class(1.0, 0.012, 200.0);
  const AgentClass b = make_agent_class(1.0, 0.008, 100.0);
  r.add(a, 2);
  r.add(b, 3);
  CHECK(r.size() == 5);
  CHECK_FALSE(r.homogeneous());
  CHECK(r.agents()[1] == a);
  CHECK(r.agents()[2] == b);
  CHECK(r.agent_class_indices() == std::vector<std::size_t>{0, 0, 1, 1, 1});
  CHECK(r.index_of(b) == 1);
}
