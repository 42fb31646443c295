#include "normsol/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "normsol/profiles.hpp"
#include "tridiagonal.hpp"

namespace normsol {

namespace {

// -Delta_h restricted to the free nodes 0 .. M-2.
detail::Tridiagonal negative_laplacian(const RadialGrid& grid) {
  const auto k = grid.flux();
  const auto w = grid.weights();
  const std::size_t n = grid.size() - 1;
  detail::Tridiagonal t;
  t.diag.resize(n);
  t.upper.resize(n - 1);
  t.lower.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = (k[i] + (i > 0 ? k[i - 1] : 0.0)) / w[i];
    if (i + 1 < n) {
      t.upper[i] = -k[i] / w[i];
      t.lower[i] = -k[i] / w[i + 1];
    }
  }
  return t;
}

// Solves (scale * A + diag(shift)) [x y] = [b c] over the free nodes.
std::pair<std::vector<double>, std::vector<double>> solve_pair(const detail::Tridiagonal& a,
                                                               double scale,
                                                               const std::vector<double>& shift,
                                                               std::span<const double> b,
                                                               std::span<const double> c) {
  const std::size_t n = a.diag.size();
  detail::Tridiagonal t = a;
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = scale * t.diag[i] + shift[i];
  for (auto& v : t.upper) v *= scale;
  for (auto& v : t.lower) v *= scale;
  std::vector<double> rhs(2 * n);
  std::copy_n(b.begin(), n, rhs.begin());
  std::copy_n(c.begin(), n, rhs.begin() + n);
  detail::solve_tridiagonal(std::move(t), rhs, 2);
  std::vector<double> x(rhs.begin(), rhs.begin() + n);
  std::vector<double> y(rhs.begin() + n, rhs.end());
  x.push_back(0.0);
  y.push_back(0.0);
  return {std::move(x), std::move(y)};
}

double weighted_dot(const RadialGrid& grid, std::span<const double> x, std::span<const double> y) {
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * x[i] * y[i];
  return sum;
}

// Gradient of u -> J~(u, s) at fixed s.
std::vector<double> sigma_gradient(const RadialFunction& u, double s,
                                   const NonlinearityModel& model) {
  const double n = u.grid().dimension();
  const double e2s = std::exp(2.0 * s);
  const double amp = std::exp(0.5 * n * s);
  const RadialFunction lap = laplacian(u);
  std::vector<double> g(u.size(), 0.0);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    g[i] = -e2s * lap[i] - f_eval(model, amp * u[i]) / amp;
  }
  return g;
}

bool below_moser(int dimension, double grad_sq, double a) {
  return dimension != 2 || grad_sq < 1.0 - a * a;
}

}  // namespace

void SolveConfig::validate(int dimension) const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::invalid_argument(std::string(name) + " must be a positive number");
    }
  };
  positive(a, "a");
  positive(step_init, "step_init");
  positive(tol_q, "tol_q");
  positive(tol_r, "tol_r");
  positive(tol_step, "tol_step");
  positive(s_max, "s_max");
  positive(recenter_threshold, "recenter_threshold");
  if (max_outer_iters < 0) throw std::invalid_argument("max_outer_iters must be >= 0");
  if (newton_max_iters < 0) throw std::invalid_argument("newton_max_iters must be >= 0");
  if (!(armijo_c1 > 0.0 && armijo_c1 < 1.0)) throw std::invalid_argument("armijo_c1 must lie in (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("backtrack must lie in (0, 1)");
  if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("bracket must satisfy lo < hi");
  if (dimension == 2 && !(a < 1.0)) {
    throw std::invalid_argument("a must lie in (0, 1) for the exponential-critical problem in the plane");
  }
}

RadialFunction project_sphere(const RadialFunction& u, double a) {
  const double m = mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("project_sphere: zero mass");
  return u.scaled(a / std::sqrt(m));
}

SolutionReport minimax_solve(const RadialFunction& seed, const NonlinearityModel& model,
                             const SolveConfig& cfg) {
  require_matching_dimension(seed, model);
  const auto& grid = seed.grid();
  const int dim = grid.dimension();
  cfg.validate(dim);
  const double a = cfg.a;

  RadialFunction u = project_sphere(seed, a);
  // fiber maxima are polished well below tol_q so that sigma is smooth
  // enough for the line search
  const double fiber_tol = 1e-4 * cfg.tol_q;
  FiberMaximum fm;
  try {
    fm = max_over_dilations(u, model, cfg.bracket, fiber_tol);
  } catch (const GeometryError& e) {
    throw GeometryError(std::string("minimax seed: ") + e.what());
  }
  double s = fm.s;

  SolutionReport rep{u};
  rep.newton_lambda = std::numeric_limits<double>::quiet_NaN();
  if (!below_moser(dim, fm.grad_sq, a)) {
    rep.message = "Moser-threshold: the seed's fiber maximum has |grad u|^2 >= 1 - a^2";
    rep.profile = dilate(u, s, cfg.s_max).profile;
    rep.energy = energy_report(rep.profile, model);
    rep.lambda = rep.energy.lambda;
    rep.gamma = rep.energy.J;
    return rep;
  }
  rep.max_accepted_grad_sq = fm.grad_sq;

  const detail::Tridiagonal minus_lap = negative_laplacian(grid);
  const std::size_t free = grid.size() - 1;
  double tau = cfg.step_init;
  int moser_rejections = 0;

  for (int it = 0; it < cfg.max_outer_iters; ++it) {
    bool recentered = false;
    if (std::abs(s) > cfg.recenter_threshold) {
      u = project_sphere(dilate(u, s, cfg.s_max).profile, a);
      s = local_fiber_max(FiberEnergy(u, model), 0.0, fiber_tol).s;
      recentered = true;
    }
    const FiberEnergy fiber(u, model);
    const double sigma = fiber.value(s);
    const double m = mass(u);
    const std::vector<double> g = sigma_gradient(u, s, model);
    const double lam = weighted_dot(grid, g, u.values()) / m;
    const double e2s = std::exp(2.0 * s);
    const std::vector<double> shift(free, std::max(std::abs(lam), 1e-8 * e2s));
    auto [pg, pu] = solve_pair(minus_lap, e2s, shift, g, u.values());
    const double beta = weighted_dot(grid, pg, u.values()) / weighted_dot(grid, pu, u.values());
    std::vector<double> d(pg.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = pg[i] - beta * pu[i];
    const double dn2 = std::max(0.0, weighted_dot(grid, d, g));

    IterationRecord rec;
    rec.stage = "minimax";
    rec.iteration = it;
    rec.J = sigma;
    rec.abs_q = std::abs(fiber.slope(s));
    {
      std::vector<double> r(g);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lam * u[i];
      rec.residual = std::sqrt(weighted_dot(grid, r, r));
    }
    rec.s = s;
    rec.grad_sq = fiber.grad_sq(s);
    rec.recentered = recentered;
    if (cfg.keep_iterates) rep.iterates.push_back(dilate(u, s, cfg.s_max).profile);

    bool accepted = false;
    RadialFunction trial = u;
    FiberMaximum trial_max;
    while (tau >= 1e-14 * cfg.step_init) {
      RadialFunction cand = u;
      cand.axpy(-tau, RadialFunction(u.grid_ptr(), d));
      try {
        cand = project_sphere(cand, a);
        trial_max = local_fiber_max(FiberEnergy(cand, model), s, fiber_tol);
      } catch (const std::exception&) {
        tau *= cfg.backtrack;
        continue;
      }
      if (!below_moser(dim, trial_max.grad_sq, a)) {
        ++moser_rejections;
        tau *= cfg.backtrack;
        continue;
      }
      if (trial_max.value <= sigma - cfg.armijo_c1 * tau * dn2) {
        accepted = true;
        trial = std::move(cand);
        break;
      }
      tau *= cfg.backtrack;
    }
    rec.step = tau * std::sqrt(dn2);
    rep.diagnostics.push_back(rec);

    if (!accepted) {
      // The decrease demanded by Armijo is below the round-off of sigma.
      const double scale = std::sqrt(rec.grad_sq + m);
      rep.minimax_converged = std::sqrt(dn2) <= 1e-6 * scale;
      rep.message = moser_rejections > 0 ? "Moser-threshold: steps rejected near |grad u|^2 = 1 - a^2"
                                          : "line search stalled";
      break;
    }
    u = std::move(trial);
    s = trial_max.s;
    rep.iterations = it + 1;
    rep.max_accepted_grad_sq = std::max(rep.max_accepted_grad_sq, trial_max.grad_sq);
    // |grad v|^2 + |lambda| a^2 carries the length scale of the iterate
    if (tau * std::sqrt(dn2) <= cfg.tol_step * std::sqrt(rec.grad_sq + std::abs(lam) * m)) {
      rep.minimax_converged = true;
      rep.message = "step below tol_step";
      break;
    }
    tau = std::min(2.0 * tau, cfg.step_init);
  }
  if (rep.message.empty()) rep.message = "max_outer_iters reached";

  rep.profile = project_sphere(dilate(u, s, cfg.s_max).profile, a);
  if (cfg.keep_iterates) rep.iterates.push_back(rep.profile);
  rep.energy = energy_report(rep.profile, model);
  rep.lambda = rep.energy.lambda;
  rep.gamma = rep.energy.J;
  rep.converged = rep.minimax_converged;
  return rep;
}

SolutionReport newton_refine(const RadialFunction& u, const NonlinearityModel& model,
                             const SolveConfig& cfg) {
  require_matching_dimension(u, model);
  const auto& grid = u.grid();
  cfg.validate(grid.dimension());
  const double a2 = cfg.a * cfg.a;
  const std::size_t free = grid.size() - 1;
  const detail::Tridiagonal minus_lap = negative_laplacian(grid);

  SolutionReport rep{u};
  double lam = lambda_multiplier(u, model);
  RadialFunction x = u;
  const double tol_r = residual_tolerance(cfg.tol_r, grad_norm_sq(u), mass(u));
  // Newton aims far below tol_r, measured against |Delta u| so that the
  // target follows the length scale of the profile.
  const double newton_tol = std::min(1e-5 * tol_r, 1e-9 * l2_norm(laplacian(u)));

  auto residual = [&](const RadialFunction& v, double l) {
    RadialFunction r = energy_gradient(v, model);
    r.axpy(-l, v);
    return r;
  };

  RadialFunction res = residual(x, lam);
  double rn = l2_norm(res);
  double gm = mass(x) - a2;
  bool stalled = false;
  for (int k = 0;; ++k) {
    IterationRecord rec;
    rec.stage = "newton";
    rec.iteration = k;
    rec.J = energy(x, model);
    rec.abs_q = std::abs(pohozaev(x, model));
    rec.residual = rn;
    rec.grad_sq = grad_norm_sq(x);
    if ((rn <= newton_tol && std::abs(gm) <= 1e-13 * a2) || k >= cfg.newton_max_iters) {
      rep.diagnostics.push_back(rec);
      break;
    }

    std::vector<double> shift(free);
    for (std::size_t i = 0; i < free; ++i) shift[i] = -f_prime(model, x[i]) - lam;
    std::vector<double> minus_res(free);
    for (std::size_t i = 0; i < free; ++i) minus_res[i] = -res[i];
    std::vector<double> dx, dy;
    try {
      auto pair = solve_pair(minus_lap, 1.0, shift, minus_res, x.values());
      dx = std::move(pair.first);
      dy = std::move(pair.second);
    } catch (const std::runtime_error& e) {
      rep.message = std::string("singular linearization: ") + e.what();
      stalled = true;
      rep.diagnostics.push_back(rec);
      break;
    }
    const double ux = weighted_dot(grid, x.values(), dx);
    const double uy = weighted_dot(grid, x.values(), dy);
    if (uy == 0.0) {
      rep.message = "singular bordered system";
      stalled = true;
      rep.diagnostics.push_back(rec);
      break;
    }
    const double dlam = (-gm - 2.0 * ux) / (2.0 * uy);
    std::vector<double> step(dx.size());
    for (std::size_t i = 0; i < step.size(); ++i) step[i] = dx[i] + dlam * dy[i];
    const RadialFunction dir(x.grid_ptr(), std::move(step));

    const double merit0 = rn * rn + gm * gm;
    double t = 1.0;
    bool accepted = false;
    while (t >= 1.0 / 1024.0) {
      try {
        RadialFunction cand = x;
        cand.axpy(t, dir);
        const double lcand = lam + t * dlam;
        RadialFunction rcand = residual(cand, lcand);
        const double rc = l2_norm(rcand);
        const double gc = mass(cand) - a2;
        if (rc * rc + gc * gc <= (1.0 - 1e-4 * t) * merit0) {
          x = std::move(cand);
          lam = lcand;
          res = std::move(rcand);
          rn = rc;
          gm = gc;
          accepted = true;
          break;
        }
      } catch (const std::range_error&) {
      }
      t *= 0.5;
    }
    rec.step = t;
    rep.diagnostics.push_back(rec);
    if (!accepted) {
      rep.message = "Newton merit no longer decreases";
      stalled = true;
      break;
    }
    rep.newton_iterations = k + 1;
  }

  const bool ok = rn <= tol_r && std::abs(gm) <= 1e-10 * a2;
  rep.refinement_converged = ok;
  if (!ok && rep.message.empty()) rep.message = "newton_max_iters reached";
  if (ok && !stalled) rep.message = "residual below tolerance";
  if (ok && stalled) rep.message += " (residual already below tolerance)";
  rep.profile = ok ? project_sphere(x, cfg.a) : u;
  rep.newton_lambda = ok ? lam : std::numeric_limits<double>::quiet_NaN();
  rep.energy = energy_report(rep.profile, model);
  rep.lambda = rep.energy.lambda;
  rep.gamma = rep.energy.J;
  rep.iterations = rep.newton_iterations;
  rep.converged = ok;
  return rep;
}

SolutionReport solve(const RadialFunction& seed, const NonlinearityModel& model,
                     const SolveConfig& cfg) {
  SolutionReport rep = minimax_solve(seed, model, cfg);
  const SolutionReport ref = newton_refine(rep.profile, model, cfg);
  rep.diagnostics.insert(rep.diagnostics.end(), ref.diagnostics.begin(), ref.diagnostics.end());
  rep.newton_iterations = ref.newton_iterations;
  rep.refinement_converged = ref.refinement_converged;
  rep.newton_lambda = ref.newton_lambda;
  rep.iterations += ref.newton_iterations;
  rep.message = "minimax: " + rep.message + "; newton: " + ref.message;
  if (ref.refinement_converged) rep.profile = ref.profile;
  rep.energy = energy_report(rep.profile, model);
  rep.lambda = rep.energy.lambda;
  rep.gamma = rep.energy.J;

  const double a2 = cfg.a * cfg.a;
  const auto& e = rep.energy;
  rep.converged = ref.refinement_converged &&
                  std::abs(e.Q) <= pohozaev_tolerance(cfg.tol_q, e.gradSq) &&
                  e.residualL2 <= residual_tolerance(cfg.tol_r, e.gradSq, e.mass) &&
                  std::abs(e.mass - a2) <= 1e-12 * a2 &&
                  below_moser(rep.profile.grid().dimension(), e.gradSq, cfg.a);
  if (cfg.keep_iterates && ref.refinement_converged) rep.iterates.push_back(rep.profile);
  return rep;
}

GeometryProbeReport geometry_probe(const NonlinearityModel& model, GridPtr grid, double a, double K,
                                   int samples, std::uint64_t seed) {
  if (!(K > 0.0)) throw std::invalid_argument("geometry_probe: K must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("geometry_probe: a must be > 0");
  if (samples < 1) throw std::invalid_argument("geometry_probe: samples must be >= 1");
  if (grid->dimension() != model.dimension()) {
    throw std::invalid_argument("geometry_probe: grid dimension does not match the model");
  }
  if (grid->dimension() == 2 && !(K < 0.5 * (1.0 - a * a))) {
    throw std::invalid_argument("geometry_probe: K must be below (1 - a^2)/2 in the plane");
  }
  Rng rng(seed);
  GeometryProbeReport rep;
  rep.K = K;
  rep.samples = samples;
  rep.sup_A = -std::numeric_limits<double>::infinity();
  rep.min_A = std::numeric_limits<double>::infinity();
  rep.inf_B = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const RadialFunction u = project_sphere(random_profile(grid, rng), a);
    const double g = grad_norm_sq(u);
    // |grad H(u, s)|^2 = e^{2s} |grad u|^2
    const double sA = 0.5 * std::log(K / g);
    const double sB = 0.5 * std::log(2.0 * K / g);
    const double jA = augmented_energy(u, sA, model);
    const double jB = augmented_energy(u, sB, model);
    rep.sup_A = std::max(rep.sup_A, jA);
    rep.min_A = std::min(rep.min_A, jA);
    rep.inf_B = std::min(rep.inf_B, jB);
  }
  rep.separated = rep.sup_A < rep.inf_B;
  rep.positive_on_A = rep.min_A > 0.0;
  return rep;
}

}  // namespace normsol
