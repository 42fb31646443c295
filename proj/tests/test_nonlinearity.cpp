#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "normsol/nonlinearity.hpp"

using namespace normsol;

TEST_CASE("combined power values") {
  const auto m = NonlinearityModel::combined_power(2.0, 4.0, 3);
  CHECK(m.dimension() == 3);
  CHECK(m.exponent() == 4.0);
  CHECK(m.ar_constant() == 4.0);
  for (double t : {-1.7, -0.3, 0.0, 0.25, 1.1}) {
    // 2* = 6 in three dimensions
    CHECK(f_eval(m, t) == doctest::Approx(2.0 * t * t * t + std::pow(t, 5)).epsilon(1e-14));
    CHECK(F_eval(m, t) == doctest::Approx(0.5 * std::pow(t, 4) + std::pow(t, 6) / 6.0).epsilon(1e-14));
    CHECK(f_prime(m, t) == doctest::Approx(6.0 * t * t + 5.0 * std::pow(t, 4)).epsilon(1e-14));
  }
  const auto m5 = NonlinearityModel::combined_power(1.0, 2.9, 5);
  // 2* = 10/3 in five dimensions
  CHECK(f_eval(m5, 0.7) == doctest::Approx(std::pow(0.7, 1.9) + std::pow(0.7, 7.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("exponential primitive against adaptive quadrature") {
  const auto m = NonlinearityModel::exp_critical(3.0, 6.0);
  for (double t : {0.05, 0.3, 0.8, 1.5, 2.4}) {
    const double exact = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return 3.0 * std::pow(x, 5) * std::exp(4.0 * std::numbers::pi * x * x); }, 0.0, t, 15,
        1e-14);
    CHECK(F_eval(m, t) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(F_eval(m, -t) == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(f_eval(m, -0.5) == doctest::Approx(-3.0 * std::pow(0.5, 5) * std::exp(std::numbers::pi)));
}

TEST_CASE("f_prime matches central differences") {
  for (const auto& m : {NonlinearityModel::combined_power(5.0, 3.5, 3), NonlinearityModel::exp_critical(2.0, 5.0)}) {
    for (double t : {-1.2, -0.4, 0.3, 0.9}) {
      const double h = 1e-6;
      const double fd = (f_eval(m, t + h) - f_eval(m, t - h)) / (2.0 * h);
      CHECK(f_prime(m, t) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("overflow guard") {
  const auto m = NonlinearityModel::exp_critical(1.0, 6.0);
  // 4 pi t^2 > 700 once t > 7.47
  CHECK_THROWS_AS(f_eval(m, 8.0), std::range_error);
  CHECK_THROWS_AS(F_eval(m, -8.0), std::range_error);
  CHECK_NOTHROW(f_eval(m, 7.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(NonlinearityModel::combined_power(0.0, 4.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearityModel::combined_power(1.0, 3.0, 3), std::invalid_argument);   // L2-subcritical
  CHECK_THROWS_AS(NonlinearityModel::combined_power(1.0, 6.0, 3), std::invalid_argument);   // critical
  CHECK_THROWS_AS(NonlinearityModel::combined_power(1.0, 4.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearityModel::exp_critical(1.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearityModel::exp_critical(-1.0, 6.0), std::invalid_argument);
  CHECK(NonlinearityModel::exp_critical(1.0, 6.0).with_mu(7.0).mu() == 7.0);
}

TEST_CASE("growth conditions") {
  std::vector<double> t;
  for (int i = -30; i <= 30; ++i) t.push_back(0.1 * i);
  for (const auto& m : {NonlinearityModel::combined_power(50.0, 4.0, 3), NonlinearityModel::exp_critical(100.0, 6.0)}) {
    const GrowthReport r = verify_growth(m, t);
    CHECK(r.all_passed());
    CHECK(r.theta == m.exponent());
    CHECK(r.excluded_zero_samples == 1);
    CHECK(r.ambrosetti_rabinowitz.worst_margin >= 0.0);
    CHECK(r.power_lower_bound.worst_margin >= 0.0);
  }
}
