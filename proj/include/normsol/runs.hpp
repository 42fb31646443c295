#ifndef NORMSOL_RUNS_HPP
#define NORMSOL_RUNS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "normsol/optimizer.hpp"
#include "normsol/properties.hpp"
#include "normsol/run_config.hpp"

namespace normsol {

inline constexpr const char* kProfileHeader = "r,u";
inline constexpr const char* kSweepHeader = "mu,gamma,lambda,gradsq,converged";

/// One solve on an automatically sized domain.
struct DomainSolve {
  SolutionReport report;
  GridPtr grid;
  /// Number of solves; >1 when the radius was adjusted to the decay rate.
  int passes = 0;
};

/// Initial radius guess from the scaling of the decay length with mu.
double radius_guess(const RunConfig& cfg, double mu);

/// Solves at coupling mu. With cfg.R > 0 the domain is fixed; otherwise the
/// radius starts at `radius` (or radius_guess when <= 0) and is reset to
/// max(min_radius, decay_lengths / sqrt(-lambda)) until the solution
/// fits. `seed` is resampled onto each grid; without it a Gaussian (or
/// the seed file) is used.
DomainSolve solve_on_domain(const RunConfig& cfg, double mu, const RadialFunction* seed,
                            double radius = 0.0);

/// -lambda a^2 compared with the closed form from the Pohozaev identity:
/// (mu (N/q - (N-2)/2)) |u|_q^q for N >= 3, 2 \int F(u) for N = 2.
/// Returns the relative mismatch.
double lemma_lambda_error(const SolutionReport& rep, const NonlinearityModel& model, double a);

struct SweepRecord {
  double mu = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double grad_sq = 0.0;
  /// |mass - a^2|
  double mass_check = 0.0;
  bool converged = false;
  double radius = 0.0;
  /// mu of the record that seeded this solve, absent for a fresh seed.
  std::optional<double> seeded_from;
  double lemma_error = 0.0;
  /// 2 gamma - (theta - 4) \int F(u)
  double primitive_margin = 0.0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::optional<double> fitted_slope;
  int fit_points = 0;
  double theoretical_exponent = 0.0;
  bool slope_passed = false;
  std::optional<double> mu_star;
  /// [largest failing mu, smallest succeeding mu] after bisection.
  std::optional<std::pair<double, double>> mu_star_interval;
};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

SweepResult sweep(const RunConfig& cfg, std::ostream* log = nullptr);

/// Property suite behind the check subcommand.
std::vector<PropertyResult> property_suite(const RunConfig& cfg, std::ostream* log = nullptr);

/// Subcommand drivers: write their files under the output directory and
/// return the exit status (0 success, 1 failure). I/O errors are reported
/// on `err` with status 1.
int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_checks(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// cfg.out_dir, replaced by $NORMSOL_OUT_DIR when that is set.
std::string output_directory(const RunConfig& cfg);

/// Reads a profile CSV with header "r,u".
std::vector<std::pair<double, double>> read_profile_csv(const std::string& path);

}  // namespace normsol

#endif  // NORMSOL_RUNS_HPP
