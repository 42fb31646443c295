#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "normsol/profiles.hpp"

using namespace normsol;

TEST_CASE("generator is reproducible") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.uniform() != c.uniform());
  Rng d(7);
  for (int i = 0; i < 200; ++i) {
    const int k = d.integer(1, 3);
    CHECK(k >= 1);
    CHECK(k <= 3);
  }
}

TEST_CASE("closed-form profiles") {
  const auto grid = make_grid(3, 10.0, 201);
  const auto g = gaussian_profile(grid, 2.0);
  CHECK(g[0] == 1.0);
  CHECK(g[20] == doctest::Approx(std::exp(-1.0 / 8.0)));

  const auto t = talenti_profile(grid, 0.5);
  CHECK(t[grid->size() - 1] == 0.0);
  const double tail = 1.0 / std::sqrt(1.0 + 400.0);
  CHECK(t[10] == doctest::Approx(1.0 / std::sqrt(2.0) - tail));
  CHECK_THROWS_AS(talenti_profile(grid, 0.0), std::invalid_argument);
}

TEST_CASE("Moser profile has unit Dirichlet energy") {
  const auto disk = make_grid(2, 2.0, 3000, Grading::geometric(1.01));
  for (double n : {10.0, 1e3, 1e5}) {
    const auto u = moser_profile(disk, n);
    // 2 pi \int_{1/n}^1 (1/r)^2 r dr / (2 pi log n) = 1
    CHECK(grad_norm_sq(u) == doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(moser_profile(make_grid(3, 2.0, 10), 10.0), std::invalid_argument);
}

TEST_CASE("random profiles") {
  const auto grid = make_grid(2, 20.0, 500);
  Rng a(5), b(5);
  const auto u = random_profile(grid, a);
  const auto v = random_profile(grid, b);
  CHECK((u - v).max_abs() == 0.0);
  CHECK(u.max_abs() > 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] >= 0.0);
  RandomProfileOptions signed_opts;
  signed_opts.signed_amplitudes = true;
  signed_opts.min_bumps = signed_opts.max_bumps = 3;
  Rng c(9);
  CHECK(random_profile(grid, c, signed_opts).max_abs() > 0.0);
}
