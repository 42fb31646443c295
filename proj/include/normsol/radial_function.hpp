#ifndef NORMSOL_RADIAL_FUNCTION_HPP
#define NORMSOL_RADIAL_FUNCTION_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "normsol/radial_grid.hpp"

namespace normsol {

/// Nodal values of a radial profile u(|x|) on a RadialGrid.
///
/// The last node carries the Dirichlet truncation u(R) = 0; constructors
/// overwrite it. Values must be finite.
class RadialFunction {
 public:
  RadialFunction(GridPtr grid, std::vector<double> values);

  static RadialFunction zeros(GridPtr grid);
  static RadialFunction sample(GridPtr grid, const std::function<double(double)>& profile);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double max_abs() const;

  RadialFunction scaled(double factor) const;

  RadialFunction& operator+=(const RadialFunction& other);
  RadialFunction& operator-=(const RadialFunction& other);
  RadialFunction& operator*=(double factor);

  /// this += factor * other
  RadialFunction& axpy(double factor, const RadialFunction& other);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

RadialFunction operator+(RadialFunction lhs, const RadialFunction& rhs);
RadialFunction operator-(RadialFunction lhs, const RadialFunction& rhs);
RadialFunction operator*(double factor, RadialFunction rhs);

/// Throws std::invalid_argument unless both functions live on the same grid.
void require_same_grid(const RadialFunction& u, const RadialFunction& v);

/// \int_{R^N} |u|^2 dx (the squared L2 norm).
double mass(const RadialFunction& u);

/// \int_{R^N} |u|^xi dx for xi >= 1.
double lp_norm_pow(const RadialFunction& u, double xi);

/// \int_{R^N} |\nabla u|^2 dx from midpoint differences.
double grad_norm_sq(const RadialFunction& u);

/// \int \nabla u . \nabla v dx, the bilinear form behind grad_norm_sq.
double dirichlet_form(const RadialFunction& u, const RadialFunction& v);

/// \int u v dx.
double inner_product(const RadialFunction& u, const RadialFunction& v);

/// Discrete u'' + (N-1) u' / r; equals N u''(0) (even reflection) at r = 0.
/// The value at r = R is reported as 0.
RadialFunction laplacian(const RadialFunction& u);

/// Weighted L2 norm over the free nodes (the boundary node is excluded).
double l2_norm(const RadialFunction& u);

}  // namespace normsol

#endif  // NORMSOL_RADIAL_FUNCTION_HPP
