#include "normsol/nonlinearity.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace normsol {

namespace {

constexpr double kFourPi = ExpCritical::alpha0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Raises when mu |t|^k exp(4 pi t^2) would leave the double range.
void check_exp_range(double mu, double t, double power) {
  const double x = kFourPi * t * t;
  if (x < kLogOverflowCap - 100.0) return;
  const double log_mag = std::log(mu) + power * std::log(std::abs(t)) + x;
  if (!(log_mag < kLogOverflowCap)) {
    std::ostringstream os;
    os << "exponential nonlinearity overflows at |t| = " << std::abs(t);
    throw std::range_error(os.str());
  }
}

double sgn(double t) { return (t > 0.0) - (t < 0.0); }

}  // namespace

NonlinearityModel NonlinearityModel::combined_power(double mu, double q, int dimension) {
  if (!std::isfinite(mu) || mu <= 0.0) throw std::invalid_argument("combined power: mu must be > 0");
  if (dimension < 3) throw std::invalid_argument("combined power: dimension must be >= 3");
  const CombinedPower cp{mu, q, dimension};
  const double lower = 2.0 + 4.0 / dimension;
  if (!(q > lower && q < cp.critical_exponent())) {
    std::ostringstream os;
    os << "combined power: q must lie in (" << lower << ", " << cp.critical_exponent() << ")";
    throw std::invalid_argument(os.str());
  }
  return NonlinearityModel(cp);
}

NonlinearityModel NonlinearityModel::exp_critical(double mu, double p) {
  if (!std::isfinite(mu) || mu <= 0.0) throw std::invalid_argument("exp critical: mu must be > 0");
  if (!std::isfinite(p) || !(p > 4.0)) throw std::invalid_argument("exp critical: p must be > 4");
  return NonlinearityModel(ExpCritical{mu, p});
}

int NonlinearityModel::dimension() const {
  return std::visit(overloaded{[](const CombinedPower& c) { return c.dimension; },
                               [](const ExpCritical&) { return 2; }},
                    params_);
}

double NonlinearityModel::mu() const {
  return std::visit([](const auto& m) { return m.mu; }, params_);
}

double NonlinearityModel::exponent() const {
  return std::visit(overloaded{[](const CombinedPower& c) { return c.q; },
                               [](const ExpCritical& e) { return e.p; }},
                    params_);
}

std::string NonlinearityModel::name() const {
  return is_combined_power() ? "combined_power" : "exp_critical";
}

NonlinearityModel NonlinearityModel::with_mu(double mu) const {
  return std::visit(overloaded{[mu](const CombinedPower& c) {
                                 return combined_power(mu, c.q, c.dimension);
                               },
                               [mu](const ExpCritical& e) { return exp_critical(mu, e.p); }},
                    params_);
}

double f_eval(const NonlinearityModel& model, double t) {
  if (t == 0.0) return 0.0;
  return std::visit(
      overloaded{[t](const CombinedPower& c) {
                   const double a = std::abs(t);
                   return (c.mu * std::pow(a, c.q - 2.0) + std::pow(a, c.critical_exponent() - 2.0)) * t;
                 },
                 [t](const ExpCritical& e) {
                   check_exp_range(e.mu, t, e.p - 1.0);
                   return e.mu * sgn(t) * std::pow(std::abs(t), e.p - 1.0) * std::exp(kFourPi * t * t);
                 }},
      model.params());
}

double F_eval(const NonlinearityModel& model, double t) {
  if (t == 0.0) return 0.0;
  return std::visit(
      overloaded{[t](const CombinedPower& c) {
                   const double a = std::abs(t);
                   const double ps = c.critical_exponent();
                   return c.mu / c.q * std::pow(a, c.q) + std::pow(a, ps) / ps;
                 },
                 [t](const ExpCritical& e) {
                   check_exp_range(e.mu, t, e.p);
                   const double x = kFourPi * t * t;
                   // all terms positive, so truncation is the only error
                   double term = 1.0;  // x^n / n!
                   double sum = 1.0 / e.p;
                   for (int n = 1; n < 100000; ++n) {
                     term *= x / n;
                     const double contrib = term / (2.0 * n + e.p);
                     sum += contrib;
                     if (n > x && contrib <= sum * 1e-17) break;
                   }
                   return e.mu * std::pow(std::abs(t), e.p) * sum;
                 }},
      model.params());
}

double f_prime(const NonlinearityModel& model, double t) {
  return std::visit(
      overloaded{[t](const CombinedPower& c) {
                   const double a = std::abs(t);
                   const double ps = c.critical_exponent();
                   if (a == 0.0) return 0.0;
                   return c.mu * (c.q - 1.0) * std::pow(a, c.q - 2.0) + (ps - 1.0) * std::pow(a, ps - 2.0);
                 },
                 [t](const ExpCritical& e) {
                   const double a = std::abs(t);
                   if (a == 0.0) return 0.0;
                   check_exp_range(e.mu, t, e.p);
                   return e.mu * std::pow(a, e.p - 2.0) * (e.p - 1.0 + 2.0 * kFourPi * t * t) *
                          std::exp(kFourPi * t * t);
                 }},
      model.params());
}

GrowthReport verify_growth(const NonlinearityModel& model, std::span<const double> t_samples) {
  constexpr double kSlack = 8.0 * std::numeric_limits<double>::epsilon();
  GrowthReport report;
  report.theta = model.ar_constant();
  report.ambrosetti_rabinowitz.name = "ambrosetti_rabinowitz";
  report.power_lower_bound.name = "power_lower_bound";
  report.ambrosetti_rabinowitz.worst_margin = std::numeric_limits<double>::infinity();
  report.power_lower_bound.worst_margin = std::numeric_limits<double>::infinity();
  const double mu = model.mu();
  const double k = model.exponent();

  auto update = [](ConditionCheck& c, double margin, double t) {
    ++c.samples;
    if (margin < c.worst_margin) {
      c.worst_margin = margin;
      c.worst_t = t;
    }
    if (margin < -kSlack) c.passed = false;
  };

  for (double t : t_samples) {
    if (t == 0.0) {
      ++report.excluded_zero_samples;
      continue;
    }
    const double f = f_eval(model, t);
    const double F = F_eval(model, t);
    const double tf = t * f;
    if (!(F > 0.0)) report.ambrosetti_rabinowitz.passed = false;
    update(report.ambrosetti_rabinowitz, (tf - report.theta * F) / tf, t);

    const double bound = mu * std::pow(std::abs(t), k - 1.0);
    const double sf = sgn(t) * f;
    update(report.power_lower_bound, (sf - bound) / sf, t);
  }
  report.note =
      "t = 0 is excluded from every check; the growth conditions are only required for t != 0";
  return report;
}

}  // namespace normsol
