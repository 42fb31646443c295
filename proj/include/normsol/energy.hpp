#ifndef NORMSOL_ENERGY_HPP
#define NORMSOL_ENERGY_HPP

#include "normsol/nonlinearity.hpp"
#include "normsol/radial_function.hpp"

namespace normsol {

/// \int F(u) dx and \int f(u) u dx, accumulated in one pass over the nodes.
struct NonlinearIntegrals {
  double primitive = 0.0;
  double work = 0.0;
};

NonlinearIntegrals nonlinear_integrals(const RadialFunction& u, const NonlinearityModel& model);

/// J(u) = 1/2 |grad u|^2 - \int F(u).
double energy(const RadialFunction& u, const NonlinearityModel& model);

/// The L2 gradient of J: -Delta u - f(u).
RadialFunction energy_gradient(const RadialFunction& u, const NonlinearityModel& model);

/// Q(u) = |grad u|^2 + N \int F(u) - (N/2) \int f(u) u.
double pohozaev(const RadialFunction& u, const NonlinearityModel& model);

/// (|grad u|^2 - \int f(u) u) / |u|_2^2. Throws std::invalid_argument for zero mass.
double lambda_multiplier(const RadialFunction& u, const NonlinearityModel& model);

/// J along the dilation fiber, from the closed formula
/// e^{2s}/2 |grad u|^2 - e^{-Ns} \int F(e^{Ns/2} u); no resampling.
double augmented_energy(const RadialFunction& u, double s, const NonlinearityModel& model);

/// L2 norm of -Delta u - lambda u - f(u) over the free nodes.
double residual_l2(const RadialFunction& u, double lambda, const NonlinearityModel& model);

struct EnergyReport {
  double J = 0.0;
  double gradSq = 0.0;
  double mass = 0.0;
  double Q = 0.0;
  double lambda = 0.0;
  double residualL2 = 0.0;
};

/// Evaluates every field, with lambda = lambda_multiplier(u).
EnergyReport energy_report(const RadialFunction& u, const NonlinearityModel& model);

/// Default scale-invariant stopping tolerances.
double pohozaev_tolerance(double tol_q, double grad_sq);
double residual_tolerance(double tol_r, double grad_sq, double mass);

/// Throws std::invalid_argument when the grid and model dimensions differ.
void require_matching_dimension(const RadialFunction& u, const NonlinearityModel& model);

}  // namespace normsol

#endif  // NORMSOL_ENERGY_HPP
