#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fortify/de_optimizer.hpp"
#include "fortify/test_functions.hpp"
#include "oracles.hpp"

using namespace fortify;

TEST_CASE("branin_hoo at the three printed optima") {
  constexpr double pi = std::numbers::pi;
  for (const std::vector<double>& x : {std::vector{-pi, 12.275}, std::vector{pi, 2.275},
                                       std::vector{9.42478, 2.475}}) {
    CHECK(std::fabs(branin_hoo(x) - 0.397887) < 1e-5);
  }
}

TEST_CASE("branin_hoo at the origin matches hand arithmetic") {
  const double hand = 36.0 + 10.0 + 10.0 - 10.0 / (8.0 * std::numbers::pi);
  const std::vector<double> origin = {0.0, 0.0};
  CHECK(std::fabs(branin_hoo(origin) - 55.6021) < 1e-3);
  CHECK(branin_hoo(origin) == doctest::Approx(hand).epsilon(1e-14));
}

TEST_CASE("branin_hoo uses the supplied coefficients") {
  BraninParams p;
  p.s = 0.0;
  const std::vector<double> x = {1.0, 2.0};
  const double u = 2.0 - p.b + p.c - 6.0;
  CHECK(branin_hoo(x, p) == doctest::Approx(u * u).epsilon(1e-14));
  CHECK(BraninParams{}.b == 5.1 / (4.0 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("registry returns Branin-Hoo with three consistent optima") {
  const TestProblem problem = branin_registry();
  REQUIRE(problem.optima.size() == 3);
  const BoxDomain& domain = problem.objective.domain();
  CHECK(domain.lower()[0] == -5.0);
  CHECK(domain.upper()[0] == 10.0);
  CHECK(domain.lower()[1] == 0.0);
  CHECK(domain.upper()[1] == 15.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& o = problem.optima[i];
    CHECK(o.label == static_cast<int>(i) + 1);
    CHECK(domain.contains(o.location));
    CHECK(std::fabs(o.value - problem.optima[0].value) < 1e-6);
    CHECK(std::fabs(problem.objective.peek(o.location) - o.value) < 1e-6);
  }
  const double d23 = euclidean_distance(problem.optima[1].location, problem.optima[2].location);
  CHECK(std::fabs(d23 - 6.28) < 0.1);
}

TEST_CASE("registered optima are stationary") {
  const TestProblem problem = branin_registry();
  for (const auto& o : problem.optima) {
    auto f = [&](std::span<const double> x) { return problem.objective.peek(x); };
    const auto g = oracle::central_gradient(f, o.location, 1e-6);
    CHECK(oracle::norm(g) < 1e-3);
  }
}

TEST_CASE("objective counts every evaluation, single and batched") {
  TestProblem problem = branin_registry();
  ObjectiveFunction& f = problem.objective;
  CHECK(f.eval_count() == 0);
  const std::vector<double> x = {1.0, 1.0};
  const double first = f(x);
  CHECK(f(x) == first);
  CHECK(f.eval_count() == 2);
  f.peek(x);
  CHECK(f.eval_count() == 2);

  PointBatch batch(2, 5);
  for (std::size_t i = 0; i < 5; ++i) batch.set_point(i, std::vector<double>{double(i) - 2.0, double(i)});
  std::vector<double> out(5);
  f.evaluate(batch, out);
  CHECK(f.eval_count() == 7);
  for (std::size_t i = 0; i < 5; ++i) CHECK(out[i] == f.peek(batch.point(i)));

  ObjectiveFunction g = f.fresh();
  CHECK(g.eval_count() == 0);
  CHECK(f.eval_count() == 7);
  f.reset_count();
  CHECK(f.eval_count() == 0);
}

TEST_CASE("box domain validation") {
  CHECK_THROWS_AS(BoxDomain({}, {}), ConfigError);
  CHECK_THROWS_AS(BoxDomain({0.0}, {0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(BoxDomain({1.0}, {1.0}), ConfigError);
  const BoxDomain box({-5.0, 0.0}, {10.0, 15.0});
  CHECK(box.volume() == 225.0);
  CHECK(box.contains(std::vector{10.0, 0.0}));
  CHECK_FALSE(box.contains(std::vector{10.0001, 0.0}));
  CHECK_FALSE(box.contains(std::vector{0.0}));
}

TEST_CASE("problem registry lookup and extension") {
  CHECK(make_problem("branin").optima.size() == 3);
  CHECK_THROWS_AS(make_problem("himmelblau"), ConfigError);
  register_problem("sphere2", [] {
    auto land = std::make_shared<CallableLandscape>(
        2, [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; });
    ObjectiveFunction obj("sphere2", BoxDomain({-1.0, -1.0}, {1.0, 1.0}), land);
    return TestProblem{obj, {KnownOptimum{{0.0, 0.0}, 0.0, 1}}};
  });
  const TestProblem sphere = make_problem("sphere2");
  CHECK(sphere.objective.peek(std::vector{0.5, 0.5}) == 0.5);
  const auto names = problem_names();
  CHECK(std::find(names.begin(), names.end(), "sphere2") != names.end());
  CHECK_THROWS_AS(find_optimum(sphere.optima, 2), ConfigError);
}
