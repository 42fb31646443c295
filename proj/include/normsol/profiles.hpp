#ifndef NORMSOL_PROFILES_HPP
#define NORMSOL_PROFILES_HPP

#include <cstdint>
#include <random>

#include "normsol/radial_function.hpp"

namespace normsol {

/// Seeded generator shared by every sampling routine. Doubles are drawn as
/// (x >> 11) * 2^-53 so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 engine_;
};

/// exp(-r^2 / (2 width^2)).
RadialFunction gaussian_profile(GridPtr grid, double width = 1.0);

/// Aubin-Talenti bubble (1 + (r/eps)^2)^{-(N-2)/2}, shifted down by its value
/// at R so that it vanishes there.
RadialFunction talenti_profile(GridPtr grid, double eps);

/// Truncated-logarithm concentration of the 2-D Moser sequence on the unit
/// disk: sqrt(log n) for r <= 1/n, log(1/r)/sqrt(log n) up to r = 1, zero
/// beyond, all divided by sqrt(2 pi). Its Dirichlet energy is 1.
RadialFunction moser_profile(GridPtr grid, double n);

struct RandomProfileOptions {
  int min_bumps = 1;
  int max_bumps = 3;
  /// Length scale of the bump widths and centres.
  double scale = 1.0;
  /// Allow negative bump amplitudes.
  bool signed_amplitudes = false;
};

/// Sum of even Gaussian bumps exp(-(r-c)^2/2s^2) + exp(-(r+c)^2/2s^2) with
/// random centres, widths and amplitudes.
RadialFunction random_profile(GridPtr grid, Rng& rng, const RandomProfileOptions& opts = {});

}  // namespace normsol

#endif  // NORMSOL_PROFILES_HPP
