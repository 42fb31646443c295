#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "normsol/constants.hpp"
#include "normsol/fiber_map.hpp"
#include "normsol/profiles.hpp"

using namespace normsol;

TEST_CASE("Sobolev constant in three dimensions") {
  const auto grid = make_grid(3, 400.0, 4000, Grading::geometric(1.003));
  const InequalityReport r = sobolev_constant(3, grid);
  CHECK(r.name == "sobolev");
  // S = 3 (pi/2)^{4/3} for N = 3
  CHECK(r.value == doctest::Approx(3.0 * std::pow(0.5 * std::numbers::pi, 4.0 / 3.0)).epsilon(1e-4));
  CHECK(r.parameters.at("N") == 3.0);
  CHECK(r.parameters.at("eps") > 0.0);
  CHECK(r.grid.M == 4000);
  CHECK(r.grid.R == 400.0);
  CHECK_THROWS_AS(sobolev_constant(2, make_grid(2, 10.0, 100)), std::invalid_argument);
}

TEST_CASE("Sobolev quotient is scale free") {
  const auto grid = make_grid(3, 400.0, 4000, Grading::geometric(1.003));
  const auto u = talenti_profile(grid, 1.0);
  CHECK(sobolev_quotient(u.scaled(3.0)) == doctest::Approx(sobolev_quotient(u)).epsilon(1e-13));
  // doubling eps and R maps the geometric grid onto itself
  const auto wide = make_grid(3, 800.0, 4000, Grading::geometric(1.003));
  CHECK(sobolev_quotient(talenti_profile(wide, 2.0)) == doctest::Approx(sobolev_quotient(u)).epsilon(1e-12));
  // on a fixed domain the truncation error shrinks with eps / R
  const double exact = 3.0 * std::pow(0.5 * std::numbers::pi, 4.0 / 3.0);
  const double coarse = std::abs(sobolev_quotient(talenti_profile(grid, 2.0)) - exact);
  const double finer = std::abs(sobolev_quotient(talenti_profile(grid, 1.0)) - exact);
  const double finest = std::abs(sobolev_quotient(talenti_profile(grid, 0.5)) - exact);
  CHECK(finer < coarse);
  CHECK(finest < finer);
}

TEST_CASE("Gagliardo-Nirenberg ratio invariances") {
  for (int n : {2, 3}) {
    const auto grid = make_grid(n, 60.0, 4000, Grading::geometric(1.0015));
    const auto u = gaussian_profile(grid, 1.5);
    const double base = gn_ratio(u, 3.5);
    CHECK(gn_ratio(u.scaled(0.01), 3.5) == doctest::Approx(base).epsilon(1e-13));
    CHECK(gn_ratio(dilate(u, 0.6).profile, 3.5) == doctest::Approx(base).epsilon(1e-5));
    CHECK_THROWS_AS(gn_ratio(RadialFunction::zeros(grid), 3.5), std::invalid_argument);
    CHECK_THROWS_AS(gn_ratio(u, 2.0), std::invalid_argument);
  }
  CHECK_THROWS_AS(gn_ratio(gaussian_profile(make_grid(3, 10.0, 100)), 6.0), std::invalid_argument);
}

TEST_CASE("Trudinger-Moser functional") {
  const auto grid = make_grid(2, 20.0, 4000, Grading::geometric(1.0015));
  CHECK(moser_functional(RadialFunction::zeros(grid), 10.0) == 0.0);
  const double c = 0.4;
  const auto u = gaussian_profile(grid, std::sqrt(0.5)).scaled(c);  // c exp(-r^2)
  const double alpha = 0.9 * 4.0 * std::numbers::pi;
  // \int (exp(b e^{-2 r^2}) - 1) dx = (pi / 2) sum_k b^k / (k k!), b = alpha c^2
  const double b = alpha * c * c;
  double series = 0.0, term = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= b / k;
    series += term / k;
  }
  CHECK(moser_functional(u, alpha) == doctest::Approx(0.5 * std::numbers::pi * series).epsilon(1e-5));
  CHECK(moser_functional(u, 2.0 * alpha) > moser_functional(u, alpha));
  CHECK_THROWS_AS(moser_functional(u.scaled(100.0), alpha), std::range_error);
  CHECK_THROWS_AS(moser_functional(gaussian_profile(make_grid(3, 5.0, 50)), 1.0), std::invalid_argument);
}

TEST_CASE("exp-integrability probe") {
  const auto grid = make_grid(2, 20.0, 500);
  const std::vector<RadialFunction> zeros(3, RadialFunction::zeros(grid));
  const ExpIntegrabilityReport z = exp_integrability_probe(zeros, 1.2, 0.5);
  CHECK(z.max_value == 0.0);
  CHECK(z.values.size() == 3);
  CHECK(z.hypothesis_holds);
  CHECK(z.threshold == doctest::Approx(0.75));

  const auto u = gaussian_profile(grid).scaled(0.2);
  const ExpIntegrabilityReport r = exp_integrability_probe({u}, 1.1, 0.5);
  CHECK(r.t == 1.1);
  CHECK(r.m == doctest::Approx(grad_norm_sq(u)));
  CHECK(r.t_times_m_below_one == (1.1 * r.m < 1.0));
  CHECK(r.max_value > 0.0);
}

TEST_CASE("grid metadata") {
  const GridMeta m = grid_meta(*make_grid(2, 3.0, 17, Grading::geometric(1.1)));
  CHECK(m.M == 17);
  CHECK(m.R == doctest::Approx(3.0));
  CHECK(m.grading.rfind("geometric", 0) == 0);
}
