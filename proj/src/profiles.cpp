#include "normsol/profiles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace normsol {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  const double x = uniform();
  const int k = lo + static_cast<int>(x * (hi - lo + 1));
  return k > hi ? hi : k;
}

RadialFunction gaussian_profile(GridPtr grid, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_profile: width must be > 0");
  const double c = 0.5 / (width * width);
  return RadialFunction::sample(std::move(grid), [c](double r) { return std::exp(-c * r * r); });
}

RadialFunction talenti_profile(GridPtr grid, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("talenti_profile: eps must be > 0");
  const double power = -0.5 * (grid->dimension() - 2.0);
  auto bubble = [eps, power](double r) { return std::pow(1.0 + (r / eps) * (r / eps), power); };
  const double tail = bubble(grid->radius());
  return RadialFunction::sample(std::move(grid), [&](double r) { return bubble(r) - tail; });
}

RadialFunction moser_profile(GridPtr grid, double n) {
  if (!(n > 1.0)) throw std::invalid_argument("moser_profile: n must be > 1");
  if (grid->dimension() != 2) throw std::invalid_argument("moser_profile: needs a 2-D grid");
  const double root = std::sqrt(std::log(n));
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return RadialFunction::sample(std::move(grid), [=](double r) {
    if (r <= 1.0 / n) return norm * root;
    if (r < 1.0) return norm * std::log(1.0 / r) / root;
    return 0.0;
  });
}

RadialFunction random_profile(GridPtr grid, Rng& rng, const RandomProfileOptions& opts) {
  const int bumps = rng.integer(opts.min_bumps, opts.max_bumps);
  struct Bump {
    double amp, centre, width;
  };
  std::vector<Bump> list;
  for (int k = 0; k < bumps; ++k) {
    Bump b;
    b.amp = rng.uniform(0.2, 1.0);
    if (opts.signed_amplitudes && rng.uniform() < 0.5) b.amp = -b.amp;
    b.centre = rng.uniform(0.0, 2.0) * opts.scale;
    b.width = rng.uniform(0.5, 1.5) * opts.scale;
    list.push_back(b);
  }
  return RadialFunction::sample(std::move(grid), [&](double r) {
    double v = 0.0;
    for (const auto& b : list) {
      const double c = 0.5 / (b.width * b.width);
      v += b.amp * (std::exp(-c * (r - b.centre) * (r - b.centre)) +
                    std::exp(-c * (r + b.centre) * (r + b.centre)));
    }
    return v;
  });
}

}  // namespace normsol
