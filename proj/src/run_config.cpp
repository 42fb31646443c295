#include "normsol/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace normsol {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + text + "'");
}

// shortest text that reads back to the same double
std::string show(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Entry {
  ConfigKey key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NS_DOUBLE(name, field, help)                                                        \
  Entry {                                                                                  \
    {name, help}, [](RunConfig& c, const std::string& v) { c.field = parse_double(name, v); }, \
        [](const RunConfig& c) { return show(c.field); }                                   \
  }
#define NS_INT(name, field, help)                                                             \
  Entry {                                                                                    \
    {name, help},                                                                            \
        [](RunConfig& c, const std::string& v) {                                             \
          c.field = static_cast<decltype(c.field)>(parse_int(name, v));                      \
        },                                                                                   \
        [](const RunConfig& c) { return std::to_string(c.field); }                           \
  }
#define NS_BOOL(name, field, help)                                                        \
  Entry {                                                                                \
    {name, help}, [](RunConfig& c, const std::string& v) { c.field = parse_bool(name, v); }, \
        [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); }       \
  }
#define NS_STRING(name, field, help)                                       \
  Entry {                                                                 \
    {name, help}, [](RunConfig& c, const std::string& v) { c.field = v; }, \
        [](const RunConfig& c) { return c.field; }                        \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      NS_INT("dimension", dimension, "space dimension N (2 selects the exponential model)"),
      NS_DOUBLE("mu", mu, "coupling mu for solve"),
      NS_DOUBLE("mu_min", mu_min, "smallest mu of a sweep"),
      NS_DOUBLE("mu_max", mu_max, "largest mu of a sweep"),
      NS_INT("mu_count", mu_count, "number of log-spaced sweep points (>= 5)"),
      NS_DOUBLE("q", q, "subcritical exponent for N >= 3, 2 + 4/N < q < 2N/(N-2)"),
      NS_DOUBLE("p", p, "power exponent of the planar model, p > 4"),
      NS_DOUBLE("a", solve.a, "prescribed L2 norm; N = 2 needs 0 < a < 1"),
      NS_DOUBLE("R", R, "domain radius, 0 = automatic from the decay rate"),
      NS_INT("M", M, "number of grid nodes"),
      NS_STRING("grading", grading, "uniform or geometric"),
      NS_DOUBLE("ratio", ratio, "cell growth ratio of the geometric grading"),
      NS_DOUBLE("decay_lengths", decay_lengths, "automatic R in units of 1/sqrt(-lambda)"),
      NS_DOUBLE("min_radius", min_radius, "lower bound for the automatic R"),
      NS_INT("max_outer_iters", solve.max_outer_iters, "minimax iteration cap"),
      NS_DOUBLE("step_init", solve.step_init, "initial minimax step"),
      NS_DOUBLE("tol_q", solve.tol_q, "Pohozaev tolerance, relative to max(1, |grad u|^2)"),
      NS_DOUBLE("tol_r", solve.tol_r, "relative PDE residual tolerance"),
      NS_DOUBLE("tol_step", solve.tol_step, "relative minimax step tolerance"),
      NS_DOUBLE("s_max", solve.s_max, "largest admissible |s| of a single dilation"),
      NS_DOUBLE("bracket_lo", solve.bracket.lo, "lower end of the fiber search bracket"),
      NS_DOUBLE("bracket_hi", solve.bracket.hi, "upper end of the fiber search bracket"),
      NS_INT("newton_max_iters", solve.newton_max_iters, "Newton iteration cap"),
      NS_DOUBLE("armijo_c1", solve.armijo_c1, "Armijo sufficient decrease constant"),
      NS_DOUBLE("backtrack", solve.backtrack, "step reduction factor"),
      NS_DOUBLE("recenter_threshold", solve.recenter_threshold, "re-dilate when |s*| exceeds this"),
      NS_BOOL("keep_iterates", solve.keep_iterates, "store accepted minimax iterates"),
      NS_STRING("seed_kind", seed_kind, "initial profile: gaussian or file"),
      NS_DOUBLE("seed_width", seed_width, "Gaussian seed width, 0 = R/40"),
      NS_STRING("seed_path", seed_path, "CSV (r,u) used when seed_kind = file"),
      NS_STRING("out_dir", out_dir, "output directory (NORMSOL_OUT_DIR overrides)"),
      NS_INT("seed", seed, "random seed for sampling checks"),
      NS_BOOL("continuation", continuation, "seed each sweep solve with the previous solution"),
      NS_INT("bisect", bisect, "bisection steps on the muStar interval"),
      NS_INT("concurrency", concurrency, "worker threads for sweeps without continuation"),
      NS_DOUBLE("slope_tolerance", slope_tolerance, "allowed excess of the fitted slope"),
  };
  return table;
}

#undef NS_DOUBLE
#undef NS_INT
#undef NS_BOOL
#undef NS_STRING

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& e : entries()) out.push_back(e.key);
    return out;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& e : entries()) {
    if (e.key.name == key) {
      e.set(cfg, trim(value));
      cfg.explicit_keys.insert(key);
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value, got '" +
                        line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    apply_setting(cfg, key, line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& args) {
  for (const auto& arg : args) {
    const auto eq = arg.find('=');
    if (arg.rfind("--", 0) != 0 || eq == std::string::npos || eq == 2) {
      throw ConfigError("unrecognized argument '" + arg + "' (overrides take the form --key=value)");
    }
    apply_setting(cfg, arg.substr(2, eq - 2), arg.substr(eq + 1));
  }
}

std::map<std::string, std::string> config_echo(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& e : entries()) out[e.key.name] = e.get(cfg);
  out["mode"] = cfg.mode;
  return out;
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw ConfigError(std::string("config key '") + name + "' must be positive");
    }
  };
  if (dimension < 2) throw ConfigError("config key 'dimension' must be at least 2");
  if (dimension == 2 && !(solve.a > 0.0 && solve.a < 1.0)) {
    throw ConfigError(
        "config key 'a': the planar exponential-critical problem requires a in (0, 1) for "
        "normalized solutions to exist, got " +
        show(solve.a));
  }
  positive(mu, "mu");
  if (mode == "sweep") {
    positive(mu_min, "mu_min");
    if (!(mu_max > mu_min)) throw ConfigError("config key 'mu_max' must exceed mu_min");
    if (mu_count < 5) throw ConfigError("config key 'mu_count' must be at least 5");
  }
  if (!(R >= 0.0 && std::isfinite(R))) throw ConfigError("config key 'R' must be >= 0");
  if (M < 3) throw ConfigError("config key 'M' must be at least 3");
  if (grading != "uniform" && grading != "geometric") {
    throw ConfigError("config key 'grading' must be uniform or geometric");
  }
  if (grading == "geometric" && !(ratio > 1.0)) {
    throw ConfigError("config key 'ratio' must exceed 1 for geometric grading");
  }
  positive(decay_lengths, "decay_lengths");
  positive(min_radius, "min_radius");
  if (seed_kind != "gaussian" && seed_kind != "file") {
    throw ConfigError("config key 'seed_kind' must be gaussian or file");
  }
  if (seed_kind == "file" && seed_path.empty()) {
    throw ConfigError("config key 'seed_path' is required when seed_kind = file");
  }
  if (!(seed_width >= 0.0)) throw ConfigError("config key 'seed_width' must be >= 0");
  if (bisect < 0) throw ConfigError("config key 'bisect' must be >= 0");
  if (concurrency < 1) throw ConfigError("config key 'concurrency' must be >= 1");
  positive(slope_tolerance, "slope_tolerance");
  try {
    solve.validate(dimension);
    (void)model();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
}

Grading RunConfig::grid_grading() const {
  return grading == "geometric" ? Grading::geometric(ratio) : Grading::uniform();
}

NonlinearityModel RunConfig::model() const { return model_at(mu); }

NonlinearityModel RunConfig::model_at(double mu_value) const {
  if (dimension == 2) return NonlinearityModel::exp_critical(mu_value, p);
  return NonlinearityModel::combined_power(mu_value, q, dimension);
}

double RunConfig::theoretical_exponent() const {
  if (dimension == 2) return 2.0 / (p - 4.0);
  return 4.0 / (dimension * (q - 2.0) - 4.0);
}

}  // namespace normsol
