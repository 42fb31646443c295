#include "normsol/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "normsol/constants.hpp"
#include "normsol/energy.hpp"
#include "normsol/fiber_map.hpp"
#include "normsol/profiles.hpp"

namespace normsol {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

RadialFunction with_mass(const RadialFunction& u, double a) {
  return u.scaled(a / std::sqrt(mass(u)));
}

double relative(double value, double exact) { return std::abs(value - exact) / std::abs(exact); }

}  // namespace

std::vector<ConvergenceRow> gaussian_convergence(int dimension, double radius, std::size_t nodes,
                                                 const Grading& grading) {
  const double n = dimension;
  const double pi_n = std::pow(std::numbers::pi, 0.5 * n);
  const double exact_mass = pi_n;
  const double exact_l4 = std::pow(0.5 * std::numbers::pi, 0.5 * n);
  const double exact_grad = 0.5 * n * pi_n;

  std::vector<ConvergenceRow> rows(4);
  rows[0].quantity = "mass";
  rows[1].quantity = "lp_norm_pow(4)";
  rows[2].quantity = "grad_norm_sq";
  rows[3].quantity = "laplacian";
  GridPtr grid = make_grid(dimension, radius, nodes, grading);
  for (int level = 0; level < 3; ++level) {
    if (level > 0) grid = refine(*grid);
    const RadialFunction u = gaussian_profile(grid, 1.0);
    rows[0].errors[level] = relative(mass(u), exact_mass);
    rows[1].errors[level] = relative(lp_norm_pow(u, 4.0), exact_l4);
    rows[2].errors[level] = relative(grad_norm_sq(u), exact_grad);
    const RadialFunction lap = laplacian(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double r = grid->node(i);
      if (r > 0.5 * radius) break;
      worst = std::max(worst, std::abs(lap[i] - (r * r - n) * std::exp(-0.5 * r * r)));
    }
    rows[3].errors[level] = worst;
  }
  for (auto& row : rows) {
    row.ratios[0] = row.errors[0] / row.errors[1];
    row.ratios[1] = row.errors[1] / row.errors[2];
  }
  return rows;
}

PropertyResult check_quadrature_convergence(int dimension, double radius, std::size_t nodes,
                                            const Grading& grading, double max_error) {
  PropertyResult res;
  res.name = "quadrature_convergence";
  res.threshold = max_error;
  const auto rows = gaussian_convergence(dimension, radius, nodes, grading);
  res.passed = true;
  std::ostringstream os;
  for (const auto& row : rows) {
    const bool ratios_ok = std::all_of(row.ratios.begin(), row.ratios.end(),
                                       [](double r) { return r >= 3.5 && r <= 4.5; });
    const bool error_ok = row.errors[0] <= max_error;
    res.metric = std::max(res.metric, row.errors[0]);
    if (!ratios_ok || !error_ok) res.passed = false;
    os << row.quantity << ": err " << fmt(row.errors[0]) << " ratios " << fmt(row.ratios[0]) << ","
       << fmt(row.ratios[1]) << "; ";
  }
  res.detail = os.str();
  return res;
}

PropertyResult check_gradient_consistency(const NonlinearityModel& model, const GridPtr& grid,
                                          double a, int samples, std::uint64_t seed, double eps,
                                          double tolerance) {
  PropertyResult res;
  res.name = "gradient_consistency_" + model.name();
  res.threshold = tolerance;
  Rng rng(seed);
  RandomProfileOptions opts;
  opts.signed_amplitudes = true;
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = with_mass(random_profile(grid, rng, opts), a);
    const RadialFunction v = with_mass(random_profile(grid, rng, opts), a);
    const double fd = (energy(u + eps * v, model) - energy(u - eps * v, model)) / (2.0 * eps);
    const double exact = inner_product(energy_gradient(u, model), v);
    double work = 0.0;
    const auto w = grid->weights();
    for (std::size_t i = 0; i < u.size(); ++i) work += w[i] * f_eval(model, u[i]) * v[i];
    const double scale = std::abs(dirichlet_form(u, v)) + std::abs(work);
    res.metric = std::max(res.metric, std::abs(fd - exact) / scale);
  }
  res.passed = res.metric <= tolerance;
  res.detail = std::to_string(samples) + " random pairs, worst relative error " + fmt(res.metric);
  return res;
}

DilationErrors dilation_errors(const RadialFunction& u, double s, double xi) {
  const DilationResult d = dilate(u, s);
  const double n = u.grid().dimension();
  DilationErrors e;
  e.mass = relative(mass(d.profile), mass(u));
  e.grad_sq = relative(grad_norm_sq(d.profile), std::exp(2.0 * s) * grad_norm_sq(u));
  e.lp = relative(lp_norm_pow(d.profile, xi), std::exp(0.5 * (xi - 2.0) * n * s) * lp_norm_pow(u, xi));
  return e;
}

PropertyResult check_dilation_identities(const GridPtr& grid, const std::vector<double>& shifts,
                                         double width, double tolerance) {
  PropertyResult res;
  res.name = "dilation_identities";
  res.threshold = tolerance;
  const RadialFunction u = gaussian_profile(grid, width);
  double worst_mass = 0.0;
  for (double s : shifts) {
    const DilationErrors e = dilation_errors(u, s);
    worst_mass = std::max(worst_mass, e.mass);
    res.metric = std::max({res.metric, e.grad_sq, e.lp});
  }
  res.passed = res.metric <= tolerance && worst_mass <= 1e-13;
  res.detail = "worst scaling error " + fmt(res.metric) + ", worst mass error " + fmt(worst_mass);
  return res;
}

double fiber_identity_error(const RadialFunction& u, const NonlinearityModel& model, double s,
                            double eps) {
  const double fd =
      (augmented_energy(u, s + eps, model) - augmented_energy(u, s - eps, model)) / (2.0 * eps);
  const RadialFunction v = dilate(u, s).profile;
  const auto nl = nonlinear_integrals(v, model);
  const double n = v.grid().dimension();
  const double scale = grad_norm_sq(v) + n * std::abs(nl.primitive) + 0.5 * n * std::abs(nl.work);
  return std::abs(fd - pohozaev(v, model)) / scale;
}

PropertyResult check_fiber_identity(const NonlinearityModel& model, const GridPtr& grid, double a,
                                    const std::vector<double>& shifts, int samples,
                                    std::uint64_t seed, double tolerance) {
  PropertyResult res;
  res.name = "fiber_pohozaev_identity_" + model.name();
  res.threshold = tolerance;
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = with_mass(random_profile(grid, rng), a);
    for (double s : shifts) res.metric = std::max(res.metric, fiber_identity_error(u, model, s));
  }
  res.passed = res.metric <= tolerance;
  res.detail = std::to_string(samples) + " profiles x " + std::to_string(shifts.size()) +
               " shifts, worst relative error " + fmt(res.metric);
  return res;
}

PropertyResult check_growth(const NonlinearityModel& model, std::size_t count) {
  PropertyResult res;
  res.name = "growth_conditions_" + model.name();
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    // even count keeps t = 0 out of the sample set
    t[i] = -3.0 + 6.0 * (i + 0.5) / count;
  }
  const GrowthReport rep = verify_growth(model, t);
  res.passed = rep.all_passed() && rep.ambrosetti_rabinowitz.worst_margin >= 0.0 &&
               rep.power_lower_bound.worst_margin >= 0.0;
  res.metric = std::min(rep.ambrosetti_rabinowitz.worst_margin, rep.power_lower_bound.worst_margin);
  res.detail = "theta = " + fmt(rep.theta) + ", worst margins " +
               fmt(rep.ambrosetti_rabinowitz.worst_margin) + " / " +
               fmt(rep.power_lower_bound.worst_margin) + " over " + std::to_string(count) + " points";
  return res;
}

MoserBoundReport moser_bound_samples(const GridPtr& grid, double alpha, double mass_cap, int samples,
                                     std::uint64_t seed) {
  if (grid->dimension() != 2) throw std::invalid_argument("moser_bound_samples: needs a planar grid");
  Rng rng(seed);
  MoserBoundReport rep;
  rep.samples = samples;
  for (int k = 0; k < samples; ++k) {
    // the planar Dirichlet energy is dilation invariant, so a profile
    // phi(r / L) keeps |grad|^2 while its mass scales with L^2
    const int bumps = rng.integer(1, 3);
    std::vector<std::array<double, 3>> list;
    for (int b = 0; b < bumps; ++b) {
      list.push_back({rng.uniform(0.2, 1.0), rng.uniform(0.0, 2.0), rng.uniform(0.5, 1.5)});
    }
    auto phi = [&](double r) {
      double v = 0.0;
      for (const auto& b : list) {
        const double c = 0.5 / (b[2] * b[2]);
        v += b[0] * (std::exp(-c * (r - b[1]) * (r - b[1])) + std::exp(-c * (r + b[1]) * (r + b[1])));
      }
      return v;
    };
    const double target = rng.uniform(0.2, 0.9) * mass_cap;
    const RadialFunction base = RadialFunction::sample(grid, phi);
    const double length = std::sqrt(target * grad_norm_sq(base) / mass(base));
    RadialFunction u = RadialFunction::sample(grid, [&](double r) { return phi(r / length); });
    u *= 1.0 / std::sqrt(grad_norm_sq(u));
    rep.max_value = std::max(rep.max_value, moser_functional(u, alpha));
    rep.max_grad_sq = std::max(rep.max_grad_sq, grad_norm_sq(u));
    rep.max_mass = std::max(rep.max_mass, mass(u));
  }
  return rep;
}

std::vector<double> moser_sequence_values(const GridPtr& grid, double alpha,
                                          const std::vector<double>& concentrations) {
  std::vector<double> out;
  for (double n : concentrations) out.push_back(moser_functional(moser_profile(grid, n), alpha));
  return out;
}

double min_random_sobolev_quotient(const GridPtr& grid, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    RandomProfileOptions opts;
    opts.scale = rng.uniform(0.5, 4.0);
    best = std::min(best, sobolev_quotient(random_profile(grid, rng, opts)));
  }
  return best;
}

}  // namespace normsol
