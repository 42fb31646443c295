#ifndef NORMSOL_FIBER_MAP_HPP
#define NORMSOL_FIBER_MAP_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "normsol/nonlinearity.hpp"
#include "normsol/radial_function.hpp"

namespace normsol {

/// Raised when s -> J(H(u, s)) has no interior maximum in the search bracket.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DilationResult {
  RadialFunction profile;
  double s = 0.0;
  /// Relative mass change of the resampled profile before renormalization.
  double mass_drift = 0.0;
  bool resolution_warning = false;
};

inline constexpr double kDefaultMaxDilation = 4.0;
inline constexpr double kMassDriftWarning = 1e-4;

/// Mass-preserving dilation H(u, s)(x) = e^{Ns/2} u(e^s x).
///
/// The profile is resampled through a monotone cubic (PCHIP) interpolant
/// with zero slope at the origin and zero extension beyond R, then rescaled
/// once so that mass(result) == mass(u). Throws std::range_error for
/// |s| > s_max.
DilationResult dilate(const RadialFunction& u, double s, double s_max = kDefaultMaxDilation);

/// Transfers u onto another grid of the same dimension with the same PCHIP
/// interpolant, zero beyond the old radius. Mass is not restored.
RadialFunction resample(const RadialFunction& u, GridPtr target);

/// s -> J~(u, s) and its first two s-derivatives, evaluated from the
/// closed formula. Power nonlinearities reduce to three cached integrals;
/// the exponential model sums over nodes on every call.
class FiberEnergy {
 public:
  FiberEnergy(const RadialFunction& u, const NonlinearityModel& model);

  double value(double s) const;
  /// Equals the Pohozaev functional of H(u, s) in the continuum.
  double slope(double s) const;
  double curvature(double s) const;
  /// |grad H(u, s)|^2 = e^{2s} |grad u|^2
  double grad_sq(double s) const;

 private:
  struct Sums {
    double primitive = 0.0;  // e^{-Ns} \int F(v)
    double slope = 0.0;      // e^{-Ns} \int (N F - N/2 f v)
    double curvature = 0.0;  // e^{-Ns} N^2 \int (-F + 3/4 f v - 1/4 f' v^2)
  };
  Sums nodal_sums(double s, bool need_curvature) const;

  GridPtr grid_;
  std::vector<double> values_;
  NonlinearityModel model_;
  int dimension_;
  double grad_sq_;
  bool power_form_;
  double lq_ = 0.0;
  double lcrit_ = 0.0;
};

struct Bracket {
  double lo = -3.0;
  double hi = 3.0;
};

struct FiberMaximum {
  double s = 0.0;
  double value = 0.0;
  /// dJ~/ds at s; zero at an exact maximum.
  double slope = 0.0;
  double grad_sq = 0.0;
  Bracket bracket;
  bool bracket_expanded = false;
  bool slope_converged = false;
};

/// Maximizes s -> J~(u, s): a coarse scan locates the interior maximum
/// (expanding the bracket by 1 on each side once if needed), golden-section
/// search narrows it, and safeguarded Newton on dJ~/ds polishes it until
/// |dJ~/ds| <= tol_q * grad_sq, which implies the default Pohozaev tolerance
/// tol_q * max(1, grad_sq). Ties go to the smallest s.
/// Throws GeometryError without an interior maximum.
FiberMaximum max_over_dilations(const RadialFunction& u, const NonlinearityModel& model,
                                Bracket bracket = {}, double tol_q = 1e-6);

/// Maximum of the fiber closest to s0, found by stepping out from s0 until
/// the slope changes sign and then polishing with safeguarded Newton. Used
/// for warm starts when the previous maximizer is a good guess.
FiberMaximum local_fiber_max(const FiberEnergy& fiber, double s0, double tol_q = 1e-6);

}  // namespace normsol

#endif  // NORMSOL_FIBER_MAP_HPP
