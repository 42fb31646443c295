#include "normsol/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "normsol/nonlinearity.hpp"
#include "normsol/profiles.hpp"

namespace normsol {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double guarded_expm1(double x) {
  if (!(x < kLogOverflowCap)) throw std::range_error("exponential argument exceeds the overflow cap");
  return std::expm1(x);
}

}  // namespace

GridMeta grid_meta(const RadialGrid& grid) {
  return {grid.size(), grid.radius(), grid.grading().name()};
}

double sobolev_quotient(const RadialFunction& u) {
  const int n = u.grid().dimension();
  if (n < 3) throw std::invalid_argument("sobolev_quotient: needs N >= 3");
  const double ps = 2.0 * n / (n - 2.0);
  const double l = lp_norm_pow(u, ps);
  if (!(l > 0.0)) throw std::invalid_argument("sobolev_quotient: zero profile");
  return grad_norm_sq(u) / std::pow(l, 2.0 / ps);
}

InequalityReport sobolev_constant(int dimension, const GridPtr& grid) {
  if (dimension < 3) throw std::invalid_argument("sobolev_constant: needs N >= 3");
  if (grid->dimension() != dimension) {
    throw std::invalid_argument("sobolev_constant: grid dimension differs from N");
  }
  const double lo = std::log(50.0 * grid->cell_width(0));
  const double hi = std::log(grid->radius() / 50.0);
  if (!(lo < hi)) throw std::invalid_argument("sobolev_constant: grid too coarse for the bubble family");

  auto quotient = [&](double log_eps) {
    return sobolev_quotient(talenti_profile(grid, std::exp(log_eps)));
  };
  constexpr int kScan = 41;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> xs(kScan);
  for (int k = 0; k < kScan; ++k) {
    xs[k] = lo + (hi - lo) * k / (kScan - 1);
    const double v = quotient(xs[k]);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, kScan - 1)];
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = quotient(x1);
  double f2 = quotient(x2);
  while (b - a > 1e-6) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = quotient(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = quotient(x2);
    }
  }
  double x = 0.5 * (a + b);
  double value = quotient(x);
  if (best_value < value) {
    value = best_value;
    x = xs[best];
  }
  InequalityReport rep;
  rep.name = "sobolev";
  rep.value = value;
  rep.parameters["N"] = dimension;
  rep.parameters["eps"] = std::exp(x);
  rep.grid = grid_meta(*grid);
  return rep;
}

double gn_ratio(const RadialFunction& u, double xi) {
  const int n = u.grid().dimension();
  if (!(xi > 2.0)) throw std::invalid_argument("gn_ratio: xi must be > 2");
  if (n >= 3 && !(xi < 2.0 * n / (n - 2.0))) throw std::invalid_argument("gn_ratio: xi must be < 2*");
  const double m = mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("gn_ratio: zero profile");
  const double g = n * (0.5 - 1.0 / xi);
  const double grad = grad_norm_sq(u);
  return std::pow(lp_norm_pow(u, xi), 1.0 / xi) /
         (std::pow(grad, 0.5 * g) * std::pow(m, 0.5 * (1.0 - g)));
}

double moser_functional(const RadialFunction& u, double alpha) {
  if (u.grid().dimension() != 2) throw std::invalid_argument("moser_functional: needs a planar grid");
  if (!(alpha > 0.0)) throw std::invalid_argument("moser_functional: alpha must be > 0");
  const auto w = u.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * guarded_expm1(alpha * u[i] * u[i]);
  return sum;
}

ExpIntegrabilityReport exp_integrability_probe(const std::vector<RadialFunction>& sequence,
                                               double t, double a) {
  if (!(t > 1.0)) throw std::invalid_argument("exp_integrability_probe: t must be > 1");
  ExpIntegrabilityReport rep;
  rep.t = t;
  rep.threshold = 1.0 - a * a;
  for (const auto& u : sequence) {
    if (u.grid().dimension() != 2) {
      throw std::invalid_argument("exp_integrability_probe: needs planar profiles");
    }
    rep.m = std::max(rep.m, grad_norm_sq(u));
    const auto w = u.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double e = guarded_expm1(kFourPi * u[i] * u[i]);
      if (e > 0.0) sum += w[i] * std::pow(e, t);
    }
    rep.values.push_back(sum);
    rep.max_value = std::max(rep.max_value, sum);
  }
  rep.hypothesis_holds = rep.m < rep.threshold;
  rep.t_times_m_below_one = t * rep.m < 1.0;
  return rep;
}

}  // namespace normsol
