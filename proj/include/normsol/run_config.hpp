#ifndef NORMSOL_RUN_CONFIG_HPP
#define NORMSOL_RUN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "normsol/nonlinearity.hpp"
#include "normsol/optimizer.hpp"
#include "normsol/radial_grid.hpp"

namespace normsol {

/// Bad key, bad value or inconsistent parameters (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Environment variable that replaces out_dir when set.
inline constexpr const char* kOutDirVariable = "NORMSOL_OUT_DIR";

struct RunConfig {
  std::string mode = "solve";
  int dimension = 3;
  double mu = 50.0;
  double mu_min = 100.0;
  double mu_max = 1e4;
  int mu_count = 9;
  double q = 4.0;
  double p = 6.0;

  /// Domain radius; 0 selects it from the decay rate sqrt(-lambda).
  double R = 0.0;
  std::size_t M = 4000;
  std::string grading = "geometric";
  double ratio = 1.001;
  /// Automatic domains cover this many decay lengths 1/sqrt(-lambda).
  double decay_lengths = 16.0;
  double min_radius = 20.0;

  SolveConfig solve;

  std::string seed_kind = "gaussian";  // "gaussian" or "file"
  /// Gaussian seed width; 0 means R / 40.
  double seed_width = 0.0;
  /// CSV with header r,u for seed_kind = file.
  std::string seed_path;

  std::string out_dir = ".";
  std::uint64_t seed = 1;

  bool continuation = true;
  /// Bisection steps refining the muStar interval in sweeps.
  int bisect = 0;
  int concurrency = 1;
  double slope_tolerance = 0.15;

  /// Keys given explicitly in the file or as overrides.
  std::set<std::string> explicit_keys;

  bool is_explicit(const std::string& key) const { return explicit_keys.count(key) > 0; }

  /// Throws ConfigError.
  void validate() const;

  Grading grid_grading() const;
  NonlinearityModel model() const;
  NonlinearityModel model_at(double mu_value) const;
  /// Exponent e of the decay gamma ~ mu^{-e}: 4/(N(q-2)-4) or 2/(p-4).
  double theoretical_exponent() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
};

/// Every accepted key with a one-line description.
const std::vector<ConfigKey>& config_keys();

/// Sets one key from its textual value. Throws ConfigError naming the key
/// when it is unknown or the value does not parse.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" text; '#' starts a comment. Throws ConfigError with
/// the line number on malformed lines.
void apply_config_text(RunConfig& cfg, const std::string& text);

void apply_config_file(RunConfig& cfg, const std::string& path);

/// Handles "--key=value" arguments. Throws ConfigError for anything else.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& args);

/// Echo of every key as text, in config_keys() order.
std::map<std::string, std::string> config_echo(const RunConfig& cfg);

}  // namespace normsol

#endif  // NORMSOL_RUN_CONFIG_HPP
