#ifndef NORMSOL_NONLINEARITY_HPP
#define NORMSOL_NONLINEARITY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <variant>

namespace normsol {

/// f(t) = mu |t|^{q-2} t + |t|^{2*-2} t on R^N, N >= 3, 2* = 2N/(N-2).
struct CombinedPower {
  double mu = 1.0;
  double q = 4.0;
  int dimension = 3;

  double critical_exponent() const { return 2.0 * dimension / (dimension - 2.0); }
};

/// f(t) = mu sgn(t) |t|^{p-1} exp(4 pi t^2) on R^2.
struct ExpCritical {
  static constexpr double alpha0 = 12.566370614359172;  // 4 pi

  double mu = 1.0;
  double p = 6.0;
};

/// Exponential arguments above this (on the log scale) raise std::range_error.
inline constexpr double kLogOverflowCap = 700.0;

class NonlinearityModel {
 public:
  using Params = std::variant<CombinedPower, ExpCritical>;

  /// Requires mu > 0, N >= 3 and 2 + 4/N < q < 2N/(N-2).
  static NonlinearityModel combined_power(double mu, double q, int dimension);
  /// Requires mu > 0 and p > 4.
  static NonlinearityModel exp_critical(double mu, double p);

  const Params& params() const { return params_; }
  bool is_combined_power() const { return std::holds_alternative<CombinedPower>(params_); }
  bool is_exp_critical() const { return std::holds_alternative<ExpCritical>(params_); }

  int dimension() const;
  double mu() const;
  /// q for CombinedPower, p for ExpCritical.
  double exponent() const;
  /// The Ambrosetti-Rabinowitz constant theta in theta F(t) <= t f(t).
  double ar_constant() const { return exponent(); }
  std::string name() const;

  NonlinearityModel with_mu(double mu) const;

 private:
  explicit NonlinearityModel(Params params) : params_(params) {}
  Params params_;
};

double f_eval(const NonlinearityModel& model, double t);

/// Primitive F(t) = \int_0^t f. For ExpCritical this is the positive series
/// mu |t|^p sum_n (4 pi t^2)^n / (n! (2n + p)).
double F_eval(const NonlinearityModel& model, double t);

double f_prime(const NonlinearityModel& model, double t);

struct ConditionCheck {
  std::string name;
  bool passed = true;
  /// Smallest relative margin seen; >= 0 means the inequality held everywhere.
  double worst_margin = 0.0;
  double worst_t = 0.0;
  std::size_t samples = 0;
};

struct GrowthReport {
  double theta = 0.0;
  /// 0 < theta F(t) <= t f(t)
  ConditionCheck ambrosetti_rabinowitz;
  /// sgn(t) f(t) >= mu |t|^{exponent - 1}
  ConditionCheck power_lower_bound;
  std::size_t excluded_zero_samples = 0;
  std::string note;

  bool all_passed() const {
    return ambrosetti_rabinowitz.passed && power_lower_bound.passed;
  }
};

/// Checks the growth conditions at every sample point; t = 0 is skipped
/// because the conditions are only required for t != 0.
GrowthReport verify_growth(const NonlinearityModel& model, std::span<const double> t_samples);

}  // namespace normsol

#endif  // NORMSOL_NONLINEARITY_HPP
