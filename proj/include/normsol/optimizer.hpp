#ifndef NORMSOL_OPTIMIZER_HPP
#define NORMSOL_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normsol/energy.hpp"
#include "normsol/fiber_map.hpp"
#include "normsol/nonlinearity.hpp"
#include "normsol/radial_function.hpp"

namespace normsol {

struct SolveConfig {
  /// Prescribed L2 norm; the constraint is mass(u) = a^2.
  double a = 1.0;
  int max_outer_iters = 3000;
  double step_init = 1.0;
  double tol_q = 1e-6;
  double tol_r = 1e-5;
  /// Minimax stops once an accepted step is shorter than
  /// tol_step * sqrt(|grad v|^2 + |lambda| mass) in the preconditioner norm.
  double tol_step = 1e-5;
  double s_max = kDefaultMaxDilation;
  Bracket bracket;
  int newton_max_iters = 40;
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  /// The descent variable is re-dilated once the fiber maximizer drifts
  /// further than this from s = 0.
  double recenter_threshold = 0.25;
  /// Store every accepted minimax iterate (dilated onto its fiber maximum).
  bool keep_iterates = false;

  /// Throws std::invalid_argument for inconsistent values. `dimension` is
  /// needed for the a < 1 requirement in the plane.
  void validate(int dimension) const;
};

struct IterationRecord {
  std::string stage;  // "minimax" or "newton"
  int iteration = 0;
  /// sigma(u) = max_s J~(u, s) for minimax, J(u) for Newton
  double J = 0.0;
  double abs_q = 0.0;
  double residual = 0.0;
  double step = 0.0;
  double s = 0.0;
  double grad_sq = 0.0;
  bool recentered = false;
};

struct SolutionReport {
  explicit SolutionReport(RadialFunction u) : profile(std::move(u)) {}

  RadialFunction profile;
  double lambda = 0.0;
  EnergyReport energy;
  /// J at the returned profile, the estimate of the mountain-pass level.
  double gamma = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> diagnostics;

  bool minimax_converged = false;
  int newton_iterations = 0;
  bool refinement_converged = false;
  /// Multiplier carried by the Newton unknowns (NaN when Newton did not run).
  double newton_lambda = 0.0;
  /// Largest |grad u|^2 over accepted minimax iterates.
  double max_accepted_grad_sq = 0.0;
  std::string message;
  std::vector<RadialFunction> iterates;
};

/// u * a / sqrt(mass(u)). Throws std::invalid_argument for zero mass.
RadialFunction project_sphere(const RadialFunction& u, double a);

/// Descent of sigma(u) = max_s J~(u, s) on the sphere mass(u) = a^2.
///
/// The gradient of sigma at fixed maximizer s* is taken in closed form
/// (e^{2s} (-Delta u) - e^{-Ns/2} f(e^{Ns/2} u)), preconditioned by
/// e^{2s}(-Delta) + |lambda| and projected onto the tangent space of the
/// sphere. Steps are accepted by Armijo backtracking on sigma and followed
/// by projection back onto the sphere. The returned profile is the final
/// iterate dilated onto its fiber maximum. Throws GeometryError with context
/// when the seed has no fiber maximum.
SolutionReport minimax_solve(const RadialFunction& seed, const NonlinearityModel& model,
                             const SolveConfig& cfg);

/// Damped Newton on (-Delta u - f(u) - lambda u, mass(u) - a^2) = 0 in the
/// unknowns (u, lambda). The input is returned unchanged with zero steps
/// when it already satisfies the system. A singular or non-decreasing
/// linearization stops the refinement with refinement_converged = false
/// and the input profile.
SolutionReport newton_refine(const RadialFunction& u, const NonlinearityModel& model,
                             const SolveConfig& cfg);

/// minimax_solve followed by newton_refine. `converged` requires the
/// refined profile to satisfy |Q| <= tolQ and residual <= tolR.
SolutionReport solve(const RadialFunction& seed, const NonlinearityModel& model,
                     const SolveConfig& cfg);

struct GeometryProbeReport {
  double K = 0.0;
  int samples = 0;
  double sup_A = 0.0;
  double inf_B = 0.0;
  double min_A = 0.0;
  bool separated = false;
  bool positive_on_A = false;
};

/// Draws random profiles on the sphere of radius a, dilates them to
/// |grad u|^2 = K (set A) and 2K (set B) and compares the energies.
/// For N = 2, K must be below (1 - a^2)/2 (std::invalid_argument otherwise).
GeometryProbeReport geometry_probe(const NonlinearityModel& model, GridPtr grid, double a, double K,
                                   int samples, std::uint64_t seed);

}  // namespace normsol

#endif  // NORMSOL_OPTIMIZER_HPP
