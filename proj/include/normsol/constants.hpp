#ifndef NORMSOL_CONSTANTS_HPP
#define NORMSOL_CONSTANTS_HPP

#include <map>
#include <string>
#include <vector>

#include "normsol/radial_function.hpp"

namespace normsol {

struct GridMeta {
  std::size_t M = 0;
  double R = 0.0;
  std::string grading;
};

GridMeta grid_meta(const RadialGrid& grid);

struct InequalityReport {
  std::string name;  // "sobolev", "gagliardo_nirenberg" or "trudinger_moser"
  double value = 0.0;
  std::map<std::string, double> parameters;
  GridMeta grid;
};

/// Smallest Rayleigh quotient |grad u|^2 / |u|_{2*}^2 over dilations
/// u(r) = talenti(r / eps) of the truncated bubble. The search covers
/// eps in [50 h_0, R / 50] (h_0 the first cell width) on a logarithmic
/// scan refined by golden section; parameters carry "eps" and "N".
/// Below about 50 h_0 the bubble core is under-resolved and the discrete
/// quotient drops under the continuum value, so the lower end of the range
/// is a resolution limit; on graded grids the minimum usually sits there.
InequalityReport sobolev_constant(int dimension, const GridPtr& grid);

/// |grad u|^2 / |u|_{2*}^2 for N >= 3.
double sobolev_quotient(const RadialFunction& u);

/// |u|_xi / (|grad u|_2^g |u|_2^{1-g}) with g = N (1/2 - 1/xi).
/// Throws std::invalid_argument for zero u or xi <= 2 (or xi >= 2* when N >= 3).
double gn_ratio(const RadialFunction& u, double xi);

/// \int (exp(alpha u^2) - 1) dx on a planar grid. Throws std::range_error
/// when alpha u^2 exceeds the overflow cap and std::invalid_argument for
/// N != 2 or alpha <= 0.
double moser_functional(const RadialFunction& u, double alpha);

struct ExpIntegrabilityReport {
  double t = 0.0;
  /// sup_n |grad u_n|^2
  double m = 0.0;
  double threshold = 0.0;  // 1 - a^2
  bool hypothesis_holds = false;  // m < 1 - a^2
  bool t_times_m_below_one = false;
  std::vector<double> values;  // \int (e^{4 pi u_n^2} - 1)^t per member
  double max_value = 0.0;
};

/// Evaluates \int (e^{4 pi u_n^2} - 1)^t dx along a planar sequence on the
/// sphere of radius a, together with the hypotheses on the sequence.
ExpIntegrabilityReport exp_integrability_probe(const std::vector<RadialFunction>& sequence,
                                               double t, double a);

}  // namespace normsol

#endif  // NORMSOL_CONSTANTS_HPP
