#include "normsol/fiber_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

// Boost 1.74's pchip header calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "normsol/energy.hpp"

namespace normsol {

DilationResult dilate(const RadialFunction& u, double s, double s_max) {
  if (!std::isfinite(s) || std::abs(s) > s_max) {
    std::ostringstream os;
    os << "dilate: |s| = " << std::abs(s) << " exceeds the resolvable range " << s_max;
    throw std::range_error(os.str());
  }
  if (s == 0.0) return {u, 0.0, 0.0, false};

  const auto& grid = u.grid();
  const double original_mass = mass(u);
  if (original_mass == 0.0) return {u, s, 0.0, false};

  const auto nodes = grid.nodes();
  std::vector<double> x(nodes.begin(), nodes.end());
  std::vector<double> y(u.values().begin(), u.values().end());
  const double radius = grid.radius();
  boost::math::interpolators::pchip<std::vector<double>> interp(std::move(x), std::move(y), 0.0);

  const double stretch = std::exp(s);
  const double amplitude = std::exp(0.5 * grid.dimension() * s);
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double r = stretch * nodes[i];
    if (r < radius) v[i] = amplitude * interp(r);
  }
  RadialFunction profile(u.grid_ptr(), std::move(v));
  const double resampled_mass = mass(profile);
  DilationResult out{profile, s, 0.0, false};
  out.mass_drift = std::abs(resampled_mass - original_mass) / original_mass;
  out.resolution_warning = out.mass_drift > kMassDriftWarning;
  if (resampled_mass > 0.0) out.profile *= std::sqrt(original_mass / resampled_mass);
  return out;
}

RadialFunction resample(const RadialFunction& u, GridPtr target) {
  if (target->dimension() != u.grid().dimension()) {
    throw std::invalid_argument("resample: grids differ in dimension");
  }
  const auto nodes = u.grid().nodes();
  const double radius = u.grid().radius();
  boost::math::interpolators::pchip<std::vector<double>> interp(
      std::vector<double>(nodes.begin(), nodes.end()),
      std::vector<double>(u.values().begin(), u.values().end()), 0.0);
  std::vector<double> v(target->size(), 0.0);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double r = target->node(i);
    if (r < radius) v[i] = interp(r);
  }
  return RadialFunction(std::move(target), std::move(v));
}

FiberEnergy::FiberEnergy(const RadialFunction& u, const NonlinearityModel& model)
    : grid_(u.grid_ptr()),
      model_(model),
      dimension_(u.grid().dimension()),
      grad_sq_(grad_norm_sq(u)),
      power_form_(model.is_combined_power()) {
  require_matching_dimension(u, model);
  if (power_form_) {
    const auto& cp = std::get<CombinedPower>(model.params());
    lq_ = lp_norm_pow(u, cp.q);
    lcrit_ = lp_norm_pow(u, cp.critical_exponent());
  } else {
    values_.assign(u.values().begin(), u.values().end());
  }
}

FiberEnergy::Sums FiberEnergy::nodal_sums(double s, bool need_curvature) const {
  const double n = dimension_;
  const double amplitude = std::exp(0.5 * n * s);
  const double damping = std::exp(-n * s);
  const auto w = grid_->weights();
  Sums sums;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = amplitude * values_[i];
    if (v == 0.0) continue;
    const double F = F_eval(model_, v);
    const double fv = f_eval(model_, v) * v;
    sums.primitive += w[i] * F;
    sums.slope += w[i] * (n * F - 0.5 * n * fv);
    if (need_curvature) {
      sums.curvature += w[i] * (-F + 0.75 * fv - 0.25 * f_prime(model_, v) * v * v);
    }
  }
  sums.primitive *= damping;
  sums.slope *= damping;
  sums.curvature *= damping * n * n;
  return sums;
}

double FiberEnergy::grad_sq(double s) const { return std::exp(2.0 * s) * grad_sq_; }

double FiberEnergy::value(double s) const {
  if (power_form_) {
    const auto& cp = std::get<CombinedPower>(model_.params());
    const double n = dimension_;
    const double ps = cp.critical_exponent();
    return 0.5 * std::exp(2.0 * s) * grad_sq_ -
           cp.mu / cp.q * std::exp(0.5 * (cp.q - 2.0) * n * s) * lq_ -
           std::exp(0.5 * (ps - 2.0) * n * s) * lcrit_ / ps;
  }
  return 0.5 * std::exp(2.0 * s) * grad_sq_ - nodal_sums(s, false).primitive;
}

double FiberEnergy::slope(double s) const {
  if (power_form_) {
    const auto& cp = std::get<CombinedPower>(model_.params());
    const double n = dimension_;
    const double ps = cp.critical_exponent();
    const double aq = 0.5 * (cp.q - 2.0) * n;
    const double ac = 0.5 * (ps - 2.0) * n;
    return std::exp(2.0 * s) * grad_sq_ - cp.mu / cp.q * aq * std::exp(aq * s) * lq_ -
           ac * std::exp(ac * s) * lcrit_ / ps;
  }
  return std::exp(2.0 * s) * grad_sq_ + nodal_sums(s, false).slope;
}

double FiberEnergy::curvature(double s) const {
  if (power_form_) {
    const auto& cp = std::get<CombinedPower>(model_.params());
    const double n = dimension_;
    const double ps = cp.critical_exponent();
    const double aq = 0.5 * (cp.q - 2.0) * n;
    const double ac = 0.5 * (ps - 2.0) * n;
    return 2.0 * std::exp(2.0 * s) * grad_sq_ - cp.mu / cp.q * aq * aq * std::exp(aq * s) * lq_ -
           ac * ac * std::exp(ac * s) * lcrit_ / ps;
  }
  return 2.0 * std::exp(2.0 * s) * grad_sq_ + nodal_sums(s, true).curvature;
}

namespace {

constexpr int kScanPoints = 64;

double safe_value(const FiberEnergy& fiber, double s) {
  try {
    const double v = fiber.value(s);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  } catch (const std::range_error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

// Index of the first maximal sample, or -1 when nothing is finite.
int scan(const FiberEnergy& fiber, const Bracket& b, std::vector<double>& s_out) {
  s_out.resize(kScanPoints);
  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kScanPoints; ++k) {
    const double s = b.lo + (b.hi - b.lo) * k / (kScanPoints - 1);
    s_out[k] = s;
    const double v = safe_value(fiber, s);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

bool slope_small(const FiberEnergy& fiber, double s, double slope, double tol_q) {
  return std::abs(slope) <= tol_q * fiber.grad_sq(s);
}

// Positive slope means the maximum lies to the right; overflow counts as
// being past the maximum since the energy tends to -infinity there.
double safe_slope(const FiberEnergy& fiber, double s) {
  try {
    return fiber.slope(s);
  } catch (const std::range_error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

// Safeguarded Newton on the slope inside [a, b] with slope(a) > 0 > slope(b).
FiberMaximum newton_on_slope(const FiberEnergy& fiber, double a, double b, double s, double tol_q) {
  FiberMaximum out;
  double slope = safe_slope(fiber, s);
  for (int it = 0; it < 100; ++it) {
    if (slope_small(fiber, s, slope, tol_q)) {
      out.slope_converged = true;
      break;
    }
    if (slope > 0.0) {
      a = std::max(a, s);
    } else {
      b = std::min(b, s);
    }
    double next = 0.5 * (a + b);
    if (std::isfinite(slope)) {
      const double curv = fiber.curvature(s);
      if (curv < 0.0) {
        const double trial = s - slope / curv;
        if (trial > a && trial < b) next = trial;
      }
    }
    if (next == s) break;
    s = next;
    slope = safe_slope(fiber, s);
  }
  out.s = s;
  out.value = fiber.value(s);
  out.slope = slope;
  out.grad_sq = fiber.grad_sq(s);
  out.bracket = {a, b};
  return out;
}

}  // namespace

FiberMaximum max_over_dilations(const RadialFunction& u, const NonlinearityModel& model,
                                Bracket bracket, double tol_q) {
  if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("max_over_dilations: empty bracket");
  if (!(mass(u) > 0.0)) throw GeometryError("max_over_dilations: zero profile has no fiber maximum");
  FiberEnergy fiber(u, model);

  bool expanded = false;
  std::vector<double> samples;
  int best = scan(fiber, bracket, samples);
  if (best <= 0 || best >= kScanPoints - 1) {
    bracket.lo -= 1.0;
    bracket.hi += 1.0;
    expanded = true;
    best = scan(fiber, bracket, samples);
  }
  if (best <= 0 || best >= kScanPoints - 1) {
    std::ostringstream os;
    os << "no interior maximum of J(H(u,s)) for s in [" << bracket.lo << ", " << bracket.hi << "]";
    throw GeometryError(os.str());
  }

  double a = samples[best - 1];
  double b = samples[best + 1];
  // golden section on the cell around the best sample
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = safe_value(fiber, x1);
  double f2 = safe_value(fiber, x2);
  while (b - a > 1e-7) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = safe_value(fiber, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = safe_value(fiber, x2);
    }
  }
  FiberMaximum out =
      newton_on_slope(fiber, samples[best - 1], samples[best + 1], 0.5 * (a + b), tol_q);
  out.bracket = bracket;
  out.bracket_expanded = expanded;
  return out;
}

FiberMaximum local_fiber_max(const FiberEnergy& fiber, double s0, double tol_q) {
  double slope0 = safe_slope(fiber, s0);
  if (!std::isfinite(slope0)) throw GeometryError("local_fiber_max: start point overflows");
  if (slope_small(fiber, s0, slope0, tol_q)) {
    FiberMaximum out = newton_on_slope(fiber, s0 - 1.0, s0 + 1.0, s0, tol_q);
    out.bracket = {s0, s0};
    return out;
  }
  const double dir = slope0 > 0.0 ? 1.0 : -1.0;
  double step = 0.125;
  double inner = s0;
  double outer = s0 + dir * step;
  for (int k = 0; k < 12; ++k) {
    const double sl = safe_slope(fiber, outer);
    if (dir * sl < 0.0) {
      const double a = std::min(inner, outer);
      const double b = std::max(inner, outer);
      FiberMaximum out = newton_on_slope(fiber, a, b, 0.5 * (a + b), tol_q);
      out.bracket = {a, b};
      return out;
    }
    inner = outer;
    step *= 2.0;
    outer = inner + dir * step;
  }
  throw GeometryError("local_fiber_max: slope keeps its sign; no maximum near the start point");
}

}  // namespace normsol
