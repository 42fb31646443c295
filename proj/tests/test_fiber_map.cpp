#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "normsol/energy.hpp"
#include "normsol/fiber_map.hpp"
#include "normsol/profiles.hpp"

using namespace normsol;

TEST_CASE("dilating a Gaussian gives the narrower Gaussian") {
  const auto grid = make_grid(3, 30.0, 4000, Grading::geometric(1.0015));
  const auto u = gaussian_profile(grid);
  for (double s : {-0.7, 0.5}) {
    const DilationResult d = dilate(u, s);
    CHECK(mass(d.profile) == doctest::Approx(mass(u)).epsilon(1e-14));
    CHECK_FALSE(d.resolution_warning);
    const auto exact = gaussian_profile(grid, std::exp(-s)).scaled(std::exp(1.5 * s));
    CHECK((d.profile - exact).max_abs() < 1e-6);
  }
  CHECK((dilate(u, 0.0).profile - u).max_abs() == 0.0);
  CHECK_THROWS_AS(dilate(u, 5.0), std::range_error);
}

TEST_CASE("resample onto a longer grid") {
  const auto a = make_grid(2, 15.0, 3000, Grading::geometric(1.002));
  const auto b = make_grid(2, 25.0, 2500, Grading::geometric(1.0025));
  const auto u = gaussian_profile(a, 1.5);
  const auto v = resample(u, b);
  CHECK((v - gaussian_profile(b, 1.5)).max_abs() < 1e-6);
  CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-5));
  CHECK_THROWS_AS(resample(u, make_grid(3, 15.0, 100)), std::invalid_argument);
}

TEST_CASE("fiber energy derivatives") {
  const auto grid = make_grid(3, 30.0, 3000, Grading::geometric(1.002));
  for (const auto& model : {NonlinearityModel::combined_power(50.0, 4.0, 3)}) {
    const auto u = gaussian_profile(grid).scaled(0.5);
    const FiberEnergy fiber(u, model);
    for (double s : {-0.5, 0.0, 0.3}) {
      const double h = 1e-5;
      CHECK(fiber.value(s) == doctest::Approx(augmented_energy(u, s, model)).epsilon(1e-13));
      CHECK(fiber.slope(s) == doctest::Approx((fiber.value(s + h) - fiber.value(s - h)) / (2 * h)).epsilon(1e-7));
      CHECK(fiber.curvature(s) == doctest::Approx((fiber.slope(s + h) - fiber.slope(s - h)) / (2 * h)).epsilon(1e-7));
      CHECK(fiber.grad_sq(s) == doctest::Approx(std::exp(2 * s) * grad_norm_sq(u)));
    }
  }
  const auto g2 = make_grid(2, 20.0, 2000, Grading::geometric(1.002));
  const auto model2 = NonlinearityModel::exp_critical(100.0, 6.0);
  const auto u2 = gaussian_profile(g2).scaled(0.3);
  const FiberEnergy f2(u2, model2);
  const double h = 1e-5;
  CHECK(f2.slope(0.2) == doctest::Approx((f2.value(0.2 + h) - f2.value(0.2 - h)) / (2 * h)).epsilon(1e-7));
  // the slope at s = 0 is the Pohozaev functional itself
  CHECK(f2.slope(0.0) == doctest::Approx(pohozaev(u2, model2)).epsilon(1e-12));
}

TEST_CASE("fiber maximum against a dense scan") {
  const auto grid = make_grid(3, 40.0, 4000, Grading::geometric(1.0015));
  const auto model = NonlinearityModel::combined_power(50.0, 4.0, 3);
  const auto u = gaussian_profile(grid, 2.0).scaled(0.2);
  const FiberMaximum m = max_over_dilations(u, model);
  double best = -1e300, best_s = 0.0;
  for (int k = 0; k <= 60000; ++k) {
    const double s = -3.0 + 6.0 * k / 60000;
    const double v = augmented_energy(u, s, model);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  CHECK(m.s == doctest::Approx(best_s).epsilon(2e-4));
  CHECK(m.value == doctest::Approx(best).epsilon(1e-10));
  CHECK(m.slope_converged);
  CHECK(std::abs(m.slope) <= 1e-6 * m.grad_sq);

  const FiberMaximum local = local_fiber_max(FiberEnergy(u, model), m.s + 0.4);
  CHECK(local.s == doctest::Approx(m.s).epsilon(1e-8));
}
