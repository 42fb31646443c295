#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "normsol/radial_grid.hpp"

using namespace normsol;

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("weights add up to the ball volume") {
  for (int n : {2, 3, 5}) {
    for (const Grading g : {Grading::uniform(), Grading::geometric(1.01)}) {
      const auto grid = make_grid(n, 7.5, 301, g);
      const auto w = grid->weights();
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      // |B_R| = pi^{N/2} R^N / Gamma(N/2 + 1)
      const double ball = std::pow(std::numbers::pi, 0.5 * n) * std::pow(7.5, n) / std::tgamma(0.5 * n + 1.0);
      CHECK(total == doctest::Approx(ball).epsilon(1e-13));
    }
  }
}

TEST_CASE("node layout") {
  const auto u = make_grid(3, 10.0, 11);
  CHECK(u->node(0) == 0.0);
  CHECK(u->radius() == doctest::Approx(10.0));
  CHECK(u->cell_width(4) == doctest::Approx(1.0));

  const auto g = make_grid(3, 10.0, 101, Grading::geometric(1.05));
  CHECK(g->radius() == doctest::Approx(10.0).epsilon(1e-14));
  for (std::size_t i = 1; i + 1 < g->size(); ++i) {
    CHECK(g->cell_width(i) / g->cell_width(i - 1) == doctest::Approx(1.05).epsilon(1e-10));
  }
  CHECK(g->grading().name().rfind("geometric", 0) == 0);
}

TEST_CASE("refine keeps every node") {
  const auto g = make_grid(2, 5.0, 41, Grading::geometric(1.03));
  const auto f = refine(*g);
  REQUIRE(f->size() == 81);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(f->node(2 * i) == doctest::Approx(g->node(i)).epsilon(1e-12));
  CHECK(f->grading().ratio == doctest::Approx(std::sqrt(1.03)));
}

TEST_CASE("invalid grids") {
  CHECK_THROWS_AS(make_grid(1, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, INFINITY, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 1.0, 10, Grading::geometric(1.0)), std::invalid_argument);
}
