#ifndef NORMSOL_PROPERTIES_HPP
#define NORMSOL_PROPERTIES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "normsol/nonlinearity.hpp"
#include "normsol/radial_function.hpp"

namespace normsol {

/// Outcome of one numerical property check.
struct PropertyResult {
  std::string name;
  bool passed = false;
  /// The measured quantity that is compared against `threshold`.
  double metric = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Errors of one quantity on three nested grids (M, 2M-1, 4M-3 nodes).
struct ConvergenceRow {
  std::string quantity;
  std::array<double, 3> errors{};
  /// errors[0]/errors[1] and errors[1]/errors[2]
  std::array<double, 2> ratios{};
};

/// Errors of mass, |u|_4^4, |grad u|^2 (relative) and the Laplacian (max
/// node error over r <= R/2) for u = exp(-r^2/2) against closed forms.
std::vector<ConvergenceRow> gaussian_convergence(int dimension, double radius, std::size_t nodes,
                                                 const Grading& grading);

/// Passes when every ratio lies in [3.5, 4.5] and every error on the
/// coarsest grid is at most `max_error`.
PropertyResult check_quadrature_convergence(int dimension, double radius, std::size_t nodes,
                                            const Grading& grading, double max_error = 1e-4);

/// Central differences [J(u + eps v) - J(u - eps v)] / (2 eps) against
/// <energy_gradient(u), v> for random smooth pairs scaled to L2 norm a. The
/// metric is the worst error relative to |<grad u, grad v>| + |<f(u), v>|.
PropertyResult check_gradient_consistency(const NonlinearityModel& model, const GridPtr& grid,
                                          double a, int samples, std::uint64_t seed, double eps = 1e-4,
                                          double tolerance = 1e-5);

struct DilationErrors {
  double mass = 0.0;
  double grad_sq = 0.0;
  double lp = 0.0;
};

/// Relative deviations of mass, |grad|^2 and |.|_xi^xi of dilate(u, s) from
/// the exact scaling laws.
DilationErrors dilation_errors(const RadialFunction& u, double s, double xi = 4.0);

/// Worst dilation error over s in `shifts` for a Gaussian of the given
/// width; passes below `tolerance`, with mass restored to round-off.
PropertyResult check_dilation_identities(const GridPtr& grid, const std::vector<double>& shifts,
                                         double width = 1.0, double tolerance = 1e-4);

/// |dJ~/ds (finite difference) - Q(v)| for v = dilate(u, s), relative to
/// the size of the terms of Q: |grad v|^2 + N |\int F(v)| + N/2 |\int f(v) v|.
double fiber_identity_error(const RadialFunction& u, const NonlinearityModel& model, double s,
                            double eps = 1e-4);

/// Worst fiber identity error over random profiles of L2 norm a and the
/// given shifts.
PropertyResult check_fiber_identity(const NonlinearityModel& model, const GridPtr& grid, double a,
                                    const std::vector<double>& shifts, int samples,
                                    std::uint64_t seed, double tolerance = 1e-5);

/// verify_growth on `count` evenly spaced nonzero points of [-3, 3].
PropertyResult check_growth(const NonlinearityModel& model, std::size_t count);

/// Uniform bound on the Trudinger-Moser functional at alpha for random
/// planar profiles with |grad u|^2 = 1 and mass at most mass_cap.
struct MoserBoundReport {
  double max_value = 0.0;
  double max_grad_sq = 0.0;
  double max_mass = 0.0;
  int samples = 0;
};

MoserBoundReport moser_bound_samples(const GridPtr& grid, double alpha, double mass_cap, int samples,
                                     std::uint64_t seed);

/// moser_functional along the Moser sequence for each concentration n.
std::vector<double> moser_sequence_values(const GridPtr& grid, double alpha,
                                          const std::vector<double>& concentrations);

/// Smallest Sobolev quotient over random smooth profiles (N >= 3).
double min_random_sobolev_quotient(const GridPtr& grid, int samples, std::uint64_t seed);

}  // namespace normsol

#endif  // NORMSOL_PROPERTIES_HPP
