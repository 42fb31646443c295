#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "normsol/energy.hpp"
#include "normsol/optimizer.hpp"
#include "normsol/profiles.hpp"

using namespace normsol;

TEST_CASE("config validation") {
  SolveConfig cfg;
  CHECK_NOTHROW(cfg.validate(3));
  cfg.a = 1.0;
  CHECK_THROWS_AS(cfg.validate(2), std::invalid_argument);
  cfg.a = 0.5;
  CHECK_NOTHROW(cfg.validate(2));
  cfg.tol_q = 0.0;
  CHECK_THROWS_AS(cfg.validate(3), std::invalid_argument);
  cfg = SolveConfig{};
  cfg.backtrack = 1.0;
  CHECK_THROWS_AS(cfg.validate(3), std::invalid_argument);
}

TEST_CASE("sphere projection") {
  const auto grid = make_grid(3, 10.0, 300);
  const auto u = project_sphere(gaussian_profile(grid), 0.7);
  CHECK(mass(u) == doctest::Approx(0.49).epsilon(1e-14));
  CHECK_THROWS_AS(project_sphere(RadialFunction::zeros(grid), 1.0), std::invalid_argument);
}

TEST_CASE("three-dimensional solve") {
  const auto grid = make_grid(3, 40.0, 4000, Grading::geometric(1.001));
  const auto model = NonlinearityModel::combined_power(50.0, 4.0, 3);
  SolveConfig cfg;
  const SolutionReport rep = solve(gaussian_profile(grid), model, cfg);
  REQUIRE(rep.converged);
  CHECK(rep.minimax_converged);
  CHECK(rep.refinement_converged);
  CHECK(rep.energy.lambda < 0.0);
  CHECK(rep.newton_lambda == doctest::Approx(rep.energy.lambda).epsilon(1e-8));
  CHECK(std::abs(rep.energy.Q) <= 1e-6 * rep.energy.gradSq);
  CHECK(rep.energy.residualL2 <= residual_tolerance(cfg.tol_r, rep.energy.gradSq, rep.energy.mass));
  CHECK(std::abs(rep.energy.mass - 1.0) <= 1e-12);
  CHECK(rep.gamma == rep.energy.J);
  // the refined solution is still a fiber maximum
  const FiberMaximum m = max_over_dilations(rep.profile, model);
  CHECK(std::abs(m.s) < 1e-4);
  // the solution is positive and decreasing
  for (std::size_t i = 0; i + 1 < rep.profile.size(); ++i) CHECK(rep.profile[i] >= rep.profile[i + 1]);
}

TEST_CASE("Newton converges quadratically from a rough minimax") {
  const auto grid = make_grid(3, 40.0, 4000, Grading::geometric(1.001));
  const auto model = NonlinearityModel::combined_power(50.0, 4.0, 3);
  SolveConfig cfg;
  cfg.tol_step = 3e-2;
  const SolutionReport rep = solve(gaussian_profile(grid), model, cfg);
  REQUIRE(rep.converged);
  std::vector<double> res;
  for (const auto& d : rep.diagnostics) {
    if (d.stage == "newton") res.push_back(d.residual);
  }
  REQUIRE(res.size() >= 3);
  for (std::size_t k = 0; k + 1 < res.size() && res[k + 1] > 1e-9; ++k) {
    CHECK(res[k + 1] <= 10.0 * res[k] * res[k]);
  }
}

TEST_CASE("Newton leaves a solution in place") {
  const auto grid = make_grid(3, 40.0, 4000, Grading::geometric(1.001));
  const auto model = NonlinearityModel::combined_power(50.0, 4.0, 3);
  SolveConfig cfg;
  const SolutionReport first = solve(gaussian_profile(grid), model, cfg);
  REQUIRE(first.converged);
  const SolutionReport again = newton_refine(first.profile, model, cfg);
  CHECK(again.refinement_converged);
  CHECK(again.newton_iterations == 0);
  CHECK((again.profile - first.profile).max_abs() <= 1e-15 * first.profile.max_abs());
}

TEST_CASE("planar solve stays below the Moser threshold") {
  const auto grid = make_grid(2, 40.0, 4000, Grading::geometric(1.001));
  const auto model = NonlinearityModel::exp_critical(100.0, 6.0);
  SolveConfig cfg;
  cfg.a = 0.5;
  cfg.keep_iterates = true;
  const SolutionReport rep = solve(gaussian_profile(grid), model, cfg);
  REQUIRE(rep.converged);
  CHECK(rep.energy.lambda < 0.0);
  CHECK(rep.max_accepted_grad_sq < 1.0 - 0.25);
  CHECK_FALSE(rep.iterates.empty());
  for (const auto& u : rep.iterates) CHECK(grad_norm_sq(u) < 0.75);
}

TEST_CASE("geometry probe") {
  const auto grid = make_grid(3, 200.0, 4000, Grading::geometric(1.002));
  const auto model = NonlinearityModel::combined_power(50.0, 4.0, 3);
  const GeometryProbeReport r = geometry_probe(model, grid, 1.0, 4e-3, 20, 3);
  CHECK(r.samples == 20);
  CHECK(r.separated);
  CHECK(r.positive_on_A);
  const auto disk = make_grid(2, 200.0, 4000, Grading::geometric(1.002));
  CHECK_THROWS_AS(geometry_probe(NonlinearityModel::exp_critical(1.0, 6.0), disk, 0.5, 0.4, 5, 1),
                  std::invalid_argument);
}
