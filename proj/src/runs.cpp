#include "normsol/runs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

// Boost 1.74's pchip header calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "json.hpp"
#include "normsol/constants.hpp"
#include "normsol/energy.hpp"
#include "normsol/fiber_map.hpp"
#include "normsol/profiles.hpp"

#ifndef NORMSOL_VERSION
#define NORMSOL_VERSION "0.0.0"
#endif

namespace normsol {

using json = nlohmann::ordered_json;

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_json(const RadialGrid& grid) {
  const GridMeta meta = grid_meta(grid);
  return json{{"M", meta.M}, {"R", meta.R}, {"grading", meta.grading}};
}

json versions_json() {
  json v;
  v["normsol"] = NORMSOL_VERSION;
#if defined(__clang__)
  v["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  v["compiler"] = std::string("gcc ") + __VERSION__;
#endif
  v["cxx_standard"] = static_cast<long>(__cplusplus);
  return v;
}

json config_json(const RunConfig& cfg) {
  json c;
  for (const auto& [k, v] : config_echo(cfg)) c[k] = v;
  return c;
}

json energy_json(const EnergyReport& e) {
  return json{{"J", e.J},         {"gradSq", e.gradSq}, {"mass", e.mass},
              {"Q", e.Q},         {"lambda", e.lambda}, {"residualL2", e.residualL2}};
}

json diagnostics_json(const std::vector<IterationRecord>& records) {
  json arr = json::array();
  for (const auto& d : records) {
    arr.push_back(json{{"stage", d.stage},
                       {"iteration", d.iteration},
                       {"J", d.J},
                       {"absQ", d.abs_q},
                       {"residual", d.residual},
                       {"step", d.step},
                       {"s", d.s},
                       {"gradSq", d.grad_sq},
                       {"recentered", d.recentered}});
  }
  return arr;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_profile(const std::string& path, const RadialFunction& u) {
  std::string text = std::string(kProfileHeader) + "\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    text += num17(u.grid().node(i)) + "," + num17(u[i]) + "\n";
  }
  write_text(path, text);
}

RadialFunction initial_seed(const RunConfig& cfg, const GridPtr& grid) {
  if (cfg.seed_kind == "file") {
    const auto rows = read_profile_csv(cfg.seed_path);
    std::vector<double> r, u;
    for (const auto& [x, y] : rows) {
      r.push_back(x);
      u.push_back(y);
    }
    const double last = r.back();
    boost::math::interpolators::pchip<std::vector<double>> interp(std::move(r), std::move(u), 0.0);
    return RadialFunction::sample(grid, [&](double x) { return x < last ? interp(x) : 0.0; });
  }
  const double width = cfg.seed_width > 0.0 ? cfg.seed_width : grid->radius() / 40.0;
  return gaussian_profile(grid, width);
}

double fit_radius(const RunConfig& cfg, double lambda) {
  return std::max(cfg.min_radius, cfg.decay_lengths / std::sqrt(-lambda));
}

void note(std::ostream* log, const std::string& text) {
  if (log) *log << text << "\n";
}

}  // namespace

std::string output_directory(const RunConfig& cfg) {
  if (const char* env = std::getenv(kOutDirVariable); env && *env) return env;
  return cfg.out_dir;
}

std::vector<std::pair<double, double>> read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read profile '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kProfileHeader) throw ConfigError("profile '" + path + "' must start with header r,u");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(line);
      rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ConfigError("profile '" + path + "': malformed row '" + line + "'");
    }
  }
  if (rows.size() < 3 || rows.front().first != 0.0) {
    throw ConfigError("profile '" + path + "' needs at least 3 rows starting at r = 0");
  }
  return rows;
}

double radius_guess(const RunConfig& cfg, double mu) {
  // the decay length scales like gamma^{-1/2}, i.e. like mu^{e/2}
  const double reference = cfg.dimension == 2 ? 1000.0 : 50.0;
  const double scale = std::pow(std::max(1.0, mu / reference), 0.5 * cfg.theoretical_exponent());
  return std::max(cfg.min_radius, 40.0 * scale);
}

DomainSolve solve_on_domain(const RunConfig& cfg, double mu, const RadialFunction* seed,
                            double radius) {
  const NonlinearityModel model = cfg.model_at(mu);
  const bool fixed = cfg.R > 0.0;
  double R = fixed ? cfg.R : (radius > 0.0 ? radius : radius_guess(cfg, mu));
  std::optional<RadialFunction> current;
  if (seed) current = *seed;
  for (int pass = 1;; ++pass) {
    GridPtr grid = make_grid(cfg.dimension, R, cfg.M, cfg.grid_grading());
    const RadialFunction start =
        project_sphere(current ? resample(*current, grid) : initial_seed(cfg, grid), cfg.solve.a);
    SolutionReport rep = solve(start, model, cfg.solve);
    const double lambda = rep.energy.lambda;
    if (fixed || pass == 4 || !(lambda < 0.0)) return {std::move(rep), grid, pass};
    const double need = fit_radius(cfg, lambda);
    if (R >= 0.9 * need && R <= 2.0 * need) return {std::move(rep), grid, pass};
    R = 1.1 * need;
    if (rep.converged) {
      current = rep.profile;
    } else if (!seed) {
      current.reset();
    }
  }
}

double lemma_lambda_error(const SolutionReport& rep, const NonlinearityModel& model, double a) {
  const RadialFunction& u = rep.profile;
  const double lambda = rep.energy.lambda;
  double predicted = 0.0;
  if (model.is_combined_power()) {
    const double n = model.dimension();
    const double q = model.exponent();
    predicted = -(model.mu() / (a * a)) * (n / q - 0.5 * (n - 2.0)) * lp_norm_pow(u, q);
  } else {
    predicted = -2.0 / (a * a) * nonlinear_integrals(u, model).primitive;
  }
  return std::abs(predicted - lambda) / std::abs(lambda);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope: need two matching points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

struct SweepPoint {
  SweepRecord record;
  std::optional<RadialFunction> profile;
};

SweepPoint sweep_point(const RunConfig& cfg, double mu, const RadialFunction* seed, double radius,
                       std::optional<double> seeded_from) {
  SweepPoint pt;
  SweepRecord& rec = pt.record;
  rec.mu = mu;
  rec.seeded_from = seeded_from;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    DomainSolve ds = solve_on_domain(cfg, mu, seed, radius);
    const auto& rep = ds.report;
    const NonlinearityModel model = cfg.model_at(mu);
    rec.gamma = rep.gamma;
    rec.lambda = rep.energy.lambda;
    rec.grad_sq = rep.energy.gradSq;
    rec.mass_check = std::abs(rep.energy.mass - cfg.solve.a * cfg.solve.a);
    rec.converged = rep.converged;
    rec.radius = ds.grid->radius();
    rec.lemma_error = lemma_lambda_error(rep, model, cfg.solve.a);
    rec.primitive_margin =
        2.0 * rep.gamma - (model.ar_constant() - 4.0) * nonlinear_integrals(rep.profile, model).primitive;
    if (rep.converged) pt.profile = rep.profile;
  } catch (const std::exception&) {
    rec.gamma = rec.lambda = rec.grad_sq = rec.mass_check = nan;
    rec.lemma_error = rec.primitive_margin = nan;
    rec.converged = false;
  }
  return pt;
}

std::string record_line(const SweepRecord& r) {
  std::ostringstream os;
  os << "mu " << num17(r.mu) << " gamma " << r.gamma << " lambda " << r.lambda
     << (r.converged ? " converged" : " not converged") << " R " << r.radius;
  return os.str();
}

}  // namespace

SweepResult sweep(const RunConfig& cfg, std::ostream* log) {
  SweepResult out;
  out.theoretical_exponent = cfg.theoretical_exponent();
  std::vector<double> mus(cfg.mu_count);
  for (int i = 0; i < cfg.mu_count; ++i) {
    const double t = static_cast<double>(i) / (cfg.mu_count - 1);
    mus[i] = std::exp((1.0 - t) * std::log(cfg.mu_min) + t * std::log(cfg.mu_max));
  }
  mus.back() = cfg.mu_max;

  std::vector<SweepPoint> points(mus.size());
  if (cfg.continuation) {
    for (std::size_t i = 0; i < mus.size(); ++i) {
      const SweepPoint* prev = nullptr;
      if (i > 0 && points[i - 1].profile) prev = &points[i - 1];
      double radius = 0.0;
      if (prev) {
        radius = fit_radius(cfg, prev->record.lambda) *
                 std::pow(mus[i] / prev->record.mu, 0.5 * out.theoretical_exponent);
      }
      points[i] = sweep_point(cfg, mus[i], prev ? &*prev->profile : nullptr, radius,
                              prev ? std::optional<double>(prev->record.mu) : std::nullopt);
      note(log, record_line(points[i].record));
    }
  } else {
    const int workers = std::min<int>(cfg.concurrency, static_cast<int>(mus.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < mus.size(); i += workers) {
          points[i] = sweep_point(cfg, mus[i], nullptr, 0.0, std::nullopt);
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& pt : points) note(log, record_line(pt.record));
  }
  for (const auto& pt : points) out.records.push_back(pt.record);

  const double middle = std::sqrt(cfg.mu_min * cfg.mu_max);
  std::vector<double> fx, fy;
  int converged = 0;
  for (const auto& r : out.records) {
    if (!r.converged) continue;
    ++converged;
    if (r.mu >= middle * (1.0 - 1e-12) && r.gamma > 0.0) {
      fx.push_back(r.mu);
      fy.push_back(r.gamma);
    }
  }
  out.fit_points = static_cast<int>(fx.size());
  if (converged >= 5 && fx.size() >= 2) {
    out.fitted_slope = loglog_slope(fx, fy);
    out.slope_passed = *out.fitted_slope <= -out.theoretical_exponent + cfg.slope_tolerance;
  }

  std::size_t star = out.records.size();
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    if (out.records[i].converged && out.records[i].lambda < 0.0) {
      star = i;
      break;
    }
  }
  if (star < out.records.size()) {
    out.mu_star = out.records[star].mu;
    if (star > 0) {
      double lo = out.records[star - 1].mu;
      double hi = out.records[star].mu;
      RadialFunction hi_profile = *points[star].profile;
      double hi_lambda = out.records[star].lambda;
      for (int k = 0; k < cfg.bisect; ++k) {
        const double mid = std::sqrt(lo * hi);
        const double radius =
            fit_radius(cfg, hi_lambda) * std::pow(mid / hi, 0.5 * out.theoretical_exponent);
        SweepPoint pt = sweep_point(cfg, mid, &hi_profile, radius, hi);
        note(log, "bisect " + record_line(pt.record));
        if (pt.record.converged && pt.record.lambda < 0.0) {
          hi = mid;
          hi_profile = *pt.profile;
          hi_lambda = pt.record.lambda;
        } else {
          lo = mid;
        }
      }
      out.mu_star_interval = std::make_pair(lo, hi);
      if (cfg.bisect > 0) out.mu_star = hi;
    }
  }
  return out;
}

std::vector<PropertyResult> property_suite(const RunConfig& cfg, std::ostream* log) {
  std::vector<PropertyResult> results;
  auto add = [&](PropertyResult r) {
    note(log, (r.passed ? "PASS " : "FAIL ") + r.name + "  " + r.detail);
    results.push_back(std::move(r));
  };
  const std::uint64_t seed = cfg.seed;
  const auto planar = NonlinearityModel::exp_critical(100.0, 6.0);
  const auto spatial = NonlinearityModel::combined_power(50.0, 4.0, 3);
  const double planar_a = 0.5;

  const std::size_t quad_nodes = cfg.is_explicit("M") ? cfg.M : 2000;
  for (int n : {2, 3}) {
    PropertyResult r = check_quadrature_convergence(n, 12.0, quad_nodes, Grading::uniform());
    r.name += "_N" + std::to_string(n);
    add(r);
  }

  const GridPtr g2 = make_grid(2, 30.0, 4000, Grading::geometric(1.0015));
  const GridPtr g3 = make_grid(3, 30.0, 4000, Grading::geometric(1.0015));
  add(check_gradient_consistency(spatial, g3, 1.0, 100, seed));
  add(check_gradient_consistency(planar, g2, planar_a, 100, seed));

  const std::vector<double> shifts = {-2.0, -1.0, 1.0, 2.0};
  for (int n : {2, 3}) {
    PropertyResult r = check_dilation_identities(make_grid(n, 60.0, 4000, Grading::geometric(1.0015)),
                                                 shifts);
    r.name += "_N" + std::to_string(n);
    add(r);
  }

  const std::vector<double> fiber_shifts = {-1.0, -0.5, 0.0, 0.5, 1.0};
  add(check_fiber_identity(spatial, g3, 1.0, fiber_shifts, 20, seed));
  add(check_fiber_identity(planar, g2, planar_a, fiber_shifts, 20, seed));

  add(check_growth(spatial, 100000));
  add(check_growth(planar, 100000));

  // geometry probes at one percent of the solution's |grad u|^2
  RunConfig base = cfg;
  base.R = 0.0;
  base.M = 4000;
  base.grading = "geometric";
  base.ratio = 1.001;
  base.seed_kind = "gaussian";
  base.seed_width = 0.0;
  for (int n : {3, 2}) {
    RunConfig c = base;
    c.dimension = n;
    c.q = 4.0;
    c.p = 6.0;
    c.solve.a = n == 2 ? planar_a : 1.0;
    c.solve.keep_iterates = n == 2;
    const double mu = n == 2 ? 100.0 : 50.0;
    const NonlinearityModel model = c.model_at(mu);
    const std::string tag = "_" + model.name();

    PropertyResult solved;
    solved.name = "reference_solve" + tag;
    DomainSolve ds = solve_on_domain(c, mu, nullptr);
    solved.passed = ds.report.converged && ds.report.energy.lambda < 0.0;
    solved.metric = ds.report.energy.lambda;
    solved.detail = "lambda " + num17(ds.report.energy.lambda) + ", " + ds.report.message;
    add(solved);

    const double K = 1e-2 * ds.report.energy.gradSq;
    const GridPtr probe_grid = make_grid(n, 200.0, 4000, Grading::geometric(1.002));
    const GeometryProbeReport g = geometry_probe(model, probe_grid, c.solve.a, K, 200, seed);
    PropertyResult geo;
    geo.name = "mountain_pass_geometry" + tag;
    geo.passed = g.separated && g.positive_on_A;
    geo.metric = g.inf_B - g.sup_A;
    geo.detail = "K " + num17(K) + ", sup_A " + num17(g.sup_A) + ", inf_B " + num17(g.inf_B) +
                 ", min_A " + num17(g.min_A);
    add(geo);

    if (n == 2) {
      std::vector<RadialFunction> seq = ds.report.iterates;
      seq.push_back(ds.report.profile);
      double m = 0.0;
      for (const auto& u : seq) m = std::max(m, grad_norm_sq(u));
      const double t = std::min(1.1, 0.5 * (1.0 + 1.0 / std::max(m, 1e-300)));
      const ExpIntegrabilityReport e = exp_integrability_probe(seq, t, c.solve.a);
      PropertyResult exp;
      exp.name = "exp_integrability" + tag;
      exp.passed = e.hypothesis_holds && e.t_times_m_below_one && std::isfinite(e.max_value);
      exp.metric = e.max_value;
      exp.threshold = e.threshold;
      exp.detail = std::to_string(seq.size()) + " iterates, t " + num17(t) + ", sup |grad u|^2 " +
                   num17(e.m) + ", max value " + num17(e.max_value);
      add(exp);
    }
  }
  return results;
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const NonlinearityModel model = cfg.model();
  std::optional<DomainSolve> ds;
  std::string failure;
  try {
    ds = solve_on_domain(cfg, cfg.mu, nullptr);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    failure = e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j;
  j["config"] = config_json(cfg);
  j["versions"] = versions_json();
  j["model"] = model.name();
  if (!ds) {
    j["converged"] = false;
    j["message"] = failure;
    j["wall_time"] = wall;
  } else {
    const SolutionReport& rep = ds->report;
    j["converged"] = rep.converged;
    j["lambda"] = rep.lambda;
    j["gamma"] = rep.gamma;
    j["iterations"] = rep.iterations;
    j["minimaxConverged"] = rep.minimax_converged;
    j["newtonIterations"] = rep.newton_iterations;
    j["refinementConverged"] = rep.refinement_converged;
    j["newtonLambda"] = rep.newton_lambda;
    j["maxAcceptedGradSq"] = rep.max_accepted_grad_sq;
    j["message"] = rep.message;
    j["energy"] = energy_json(rep.energy);
    j["pohozaevTolerance"] = pohozaev_tolerance(cfg.solve.tol_q, rep.energy.gradSq);
    j["residualTolerance"] = residual_tolerance(cfg.solve.tol_r, rep.energy.gradSq, rep.energy.mass);
    j["lambdaClosedFormError"] = lemma_lambda_error(rep, model, cfg.solve.a);
    j["grid"] = grid_json(*ds->grid);
    j["domainPasses"] = ds->passes;
    j["diagnostics"] = diagnostics_json(rep.diagnostics);
    j["wall_time"] = wall;
  }

  const std::string dir = output_directory(cfg);
  try {
    ensure_directory(dir);
    if (ds) write_profile((std::filesystem::path(dir) / "profile.csv").string(), ds->report.profile);
    write_text((std::filesystem::path(dir) / "report.json").string(), j.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (!ds) {
    err << "solve failed: " << failure << "\n";
    return 1;
  }
  const auto& e = ds->report.energy;
  out << model.name() << "  a = " << cfg.solve.a << "\n"
      << "converged " << (ds->report.converged ? "yes" : "no") << "  (" << ds->report.message << ")\n"
      << std::setprecision(10) << "lambda " << e.lambda << "  J " << e.J << "  |grad u|^2 " << e.gradSq
      << "  Q " << e.Q << "\n"
      << "R " << ds->grid->radius() << "  M " << ds->grid->size() << "  wall " << wall << " s\n"
      << "wrote " << dir << "/profile.csv and " << dir << "/report.json\n";
  if (!ds->report.converged) err << "solver did not converge\n";
  return ds->report.converged ? 0 : 1;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SweepResult res = sweep(cfg, &out);
  std::string csv = std::string(kSweepHeader) + "\n";
  json records = json::array();
  for (const auto& r : res.records) {
    csv += num17(r.mu) + "," + num17(r.gamma) + "," + num17(r.lambda) + "," + num17(r.grad_sq) + "," +
           (r.converged ? "true" : "false") + "\n";
    json jr{{"mu", r.mu},
            {"gamma", r.gamma},
            {"lambda", r.lambda},
            {"gradSq", r.grad_sq},
            {"massCheck", r.mass_check},
            {"converged", r.converged},
            {"R", r.radius},
            {"seededFrom", r.seeded_from ? json(*r.seeded_from) : json(nullptr)},
            {"lambdaClosedFormError", r.lemma_error},
            {"primitiveMargin", r.primitive_margin}};
    records.push_back(jr);
  }
  json j;
  j["config"] = config_json(cfg);
  j["versions"] = versions_json();
  j["theoreticalExponent"] = res.theoretical_exponent;
  j["fittedSlope"] = res.fitted_slope ? json(*res.fitted_slope) : json(nullptr);
  j["slopeAvailable"] = res.fitted_slope.has_value();
  j["fitPoints"] = res.fit_points;
  j["slopeBound"] = -res.theoretical_exponent + cfg.slope_tolerance;
  j["slopePassed"] = res.slope_passed;
  j["muStar"] = res.mu_star ? json(*res.mu_star) : json(nullptr);
  j["muStarInterval"] = res.mu_star_interval
                            ? json::array({res.mu_star_interval->first, res.mu_star_interval->second})
                            : json(nullptr);
  j["records"] = records;

  const std::string dir = output_directory(cfg);
  try {
    ensure_directory(dir);
    write_text((std::filesystem::path(dir) / "sweep.csv").string(), csv);
    write_text((std::filesystem::path(dir) / "summary.json").string(), j.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (res.fitted_slope) {
    out << "fitted slope " << *res.fitted_slope << " over " << res.fit_points
        << " points (bound " << -res.theoretical_exponent + cfg.slope_tolerance << ")\n";
  } else {
    out << "fitted slope unavailable (fewer than 5 converged records)\n";
  }
  out << "wrote " << dir << "/sweep.csv and " << dir << "/summary.json\n";
  if (!res.slope_passed) err << "slope check failed\n";
  return res.slope_passed ? 0 : 1;
}

int run_checks(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto results = property_suite(cfg);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2)
        << r.name << r.detail << "\n";
    all = all && r.passed;
  }
  for (const auto& r : results) {
    if (!r.passed) err << "failed: " << r.name << "\n";
  }
  return all ? 0 : 1;
}

int run_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  json j;
  j["config"] = config_json(cfg);
  j["versions"] = versions_json();

  const GridPtr sob_grid = make_grid(3, 400.0, 4000, Grading::geometric(1.003));
  const InequalityReport s = sobolev_constant(3, sob_grid);
  json sob{{"name", s.name}, {"value", s.value}, {"grid", grid_json(*sob_grid)}};
  for (const auto& [k, v] : s.parameters) sob["parameters"][k] = v;
  sob["continuum"] = 3.0 * std::pow(0.5 * std::numbers::pi, 4.0 / 3.0);
  j["sobolev"] = sob;

  Rng rng(cfg.seed);
  json gn = json::array();
  for (int n : {2, 3}) {
    const GridPtr g = make_grid(n, 60.0, 4000, Grading::geometric(1.0015));
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) worst = std::max(worst, gn_ratio(random_profile(g, rng), 4.0));
    gn.push_back(json{{"name", "gagliardo_nirenberg"},
                      {"N", n},
                      {"xi", 4.0},
                      {"samples", 200},
                      {"maxRatio", worst},
                      {"grid", grid_json(*g)}});
  }
  j["gagliardoNirenberg"] = gn;

  const GridPtr planar = make_grid(2, 30.0, 4000, Grading::geometric(1.0015));
  const double alpha = 0.9 * ExpCritical::alpha0;
  const MoserBoundReport mb = moser_bound_samples(planar, alpha, 0.81, 100, cfg.seed);
  j["trudingerMoser"] = json{{"name", "trudinger_moser"},
                             {"alpha", alpha},
                             {"samples", mb.samples},
                             {"maxValue", mb.max_value},
                             {"maxGradSq", mb.max_grad_sq},
                             {"maxMass", mb.max_mass},
                             {"grid", grid_json(*planar)}};

  const GridPtr disk = make_grid(2, 2.0, 3000, Grading::geometric(1.01));
  const std::vector<double> conc = {10, 100, 1e3, 1e4, 1e5, 1e6};
  const auto values = moser_sequence_values(disk, 1.1 * ExpCritical::alpha0, conc);
  j["moserSequence"] = json{{"alpha", 1.1 * ExpCritical::alpha0},
                            {"concentrations", conc},
                            {"values", values},
                            {"grid", grid_json(*disk)}};

  const std::string dir = output_directory(cfg);
  try {
    ensure_directory(dir);
    write_text((std::filesystem::path(dir) / "constants.json").string(), j.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out << std::setprecision(8) << "Sobolev S (N=3) " << s.value << " at eps " << s.parameters.at("eps")
      << "\nTrudinger-Moser max at alpha = 0.9*4pi: " << mb.max_value
      << "\nwrote " << dir << "/constants.json\n";
  return 0;
}

}  // namespace normsol
