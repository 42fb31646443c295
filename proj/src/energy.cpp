#include "normsol/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace normsol {

void require_matching_dimension(const RadialFunction& u, const NonlinearityModel& model) {
  if (u.grid().dimension() != model.dimension()) {
    throw std::invalid_argument("grid dimension does not match the nonlinearity model");
  }
}

NonlinearIntegrals nonlinear_integrals(const RadialFunction& u, const NonlinearityModel& model) {
  require_matching_dimension(u, model);
  const auto w = u.grid().weights();
  NonlinearIntegrals out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = u[i];
    if (t == 0.0) continue;
    out.primitive += w[i] * F_eval(model, t);
    out.work += w[i] * f_eval(model, t) * t;
  }
  return out;
}

double energy(const RadialFunction& u, const NonlinearityModel& model) {
  require_matching_dimension(u, model);
  const auto w = u.grid().weights();
  double primitive = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) primitive += w[i] * F_eval(model, u[i]);
  return 0.5 * grad_norm_sq(u) - primitive;
}

RadialFunction energy_gradient(const RadialFunction& u, const NonlinearityModel& model) {
  require_matching_dimension(u, model);
  RadialFunction lap = laplacian(u);
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = -lap[i] - f_eval(model, u[i]);
  return RadialFunction(u.grid_ptr(), std::move(g));
}

double pohozaev(const RadialFunction& u, const NonlinearityModel& model) {
  const auto nl = nonlinear_integrals(u, model);
  const double n = u.grid().dimension();
  return grad_norm_sq(u) + n * nl.primitive - 0.5 * n * nl.work;
}

double lambda_multiplier(const RadialFunction& u, const NonlinearityModel& model) {
  const double m = mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("lambda_multiplier: zero mass");
  const auto nl = nonlinear_integrals(u, model);
  return (grad_norm_sq(u) - nl.work) / m;
}

double augmented_energy(const RadialFunction& u, double s, const NonlinearityModel& model) {
  require_matching_dimension(u, model);
  const double n = u.grid().dimension();
  const double amplitude = std::exp(0.5 * n * s);
  const auto w = u.grid().weights();
  double primitive = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) primitive += w[i] * F_eval(model, amplitude * u[i]);
  return 0.5 * std::exp(2.0 * s) * grad_norm_sq(u) - std::exp(-n * s) * primitive;
}

double residual_l2(const RadialFunction& u, double lambda, const NonlinearityModel& model) {
  RadialFunction r = energy_gradient(u, model);
  r.axpy(-lambda, u);
  return l2_norm(r);
}

EnergyReport energy_report(const RadialFunction& u, const NonlinearityModel& model) {
  const auto nl = nonlinear_integrals(u, model);
  const double n = u.grid().dimension();
  EnergyReport r;
  r.gradSq = grad_norm_sq(u);
  r.mass = mass(u);
  r.J = 0.5 * r.gradSq - nl.primitive;
  r.Q = r.gradSq + n * nl.primitive - 0.5 * n * nl.work;
  r.lambda = r.mass > 0.0 ? (r.gradSq - nl.work) / r.mass : 0.0;
  r.residualL2 = residual_l2(u, r.lambda, model);
  return r;
}

double pohozaev_tolerance(double tol_q, double grad_sq) { return tol_q * std::max(1.0, grad_sq); }

double residual_tolerance(double tol_r, double grad_sq, double mass) {
  return tol_r * std::sqrt(grad_sq + mass);
}

}  // namespace normsol
