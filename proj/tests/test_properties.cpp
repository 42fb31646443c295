#include <cmath>

#include "doctest.h"
#include "normsol/properties.hpp"

using namespace normsol;

TEST_CASE("quadrature convergence is second order") {
  const auto rows = gaussian_convergence(3, 12.0, 1000, Grading::uniform());
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.ratios[0] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(row.ratios[1] == doctest::Approx(4.0).epsilon(0.05));
  }
  CHECK(check_quadrature_convergence(2, 12.0, 2000, Grading::uniform()).passed);
  const PropertyResult coarse = check_quadrature_convergence(2, 12.0, 50, Grading::uniform());
  CHECK_FALSE(coarse.passed);
  CHECK(coarse.name == "quadrature_convergence");
}

TEST_CASE("dilation errors shrink under refinement") {
  const auto grid = make_grid(3, 60.0, 2000, Grading::geometric(1.003));
  const auto fine = refine(*grid);
  const auto coarse_res = check_dilation_identities(grid, {-2.0, 2.0});
  const auto fine_res = check_dilation_identities(fine, {-2.0, 2.0});
  CHECK(coarse_res.passed);
  CHECK(coarse_res.metric / fine_res.metric > 3.5);
}

TEST_CASE("fiber identity and gradient checks on small samples") {
  const auto g3 = make_grid(3, 30.0, 4000, Grading::geometric(1.0015));
  const auto model = NonlinearityModel::combined_power(50.0, 4.0, 3);
  CHECK(check_fiber_identity(model, g3, 1.0, {-0.5, 0.5}, 3, 11).passed);
  CHECK(check_gradient_consistency(model, g3, 1.0, 5, 11).passed);
  CHECK(check_growth(model, 1000).passed);
}

TEST_CASE("Moser samples respect the constraints") {
  const auto disk = make_grid(2, 30.0, 4000, Grading::geometric(1.0015));
  const MoserBoundReport r = moser_bound_samples(disk, 0.9 * 4.0 * M_PI, 0.81, 10, 2);
  CHECK(r.samples == 10);
  CHECK(r.max_grad_sq == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.max_mass <= 0.81);
  CHECK(std::isfinite(r.max_value));
  const auto seq = moser_sequence_values(make_grid(2, 2.0, 3000, Grading::geometric(1.01)), 1.1 * 4.0 * M_PI,
                                         {10.0, 1e3, 1e5});
  CHECK(seq[0] < seq[1]);
  CHECK(seq[1] < seq[2]);
}
