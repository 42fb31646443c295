#include "normsol/radial_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace normsol {

RadialFunction::RadialFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("RadialFunction: null grid");
  if (values_.size() != grid_->size()) {
    throw std::invalid_argument("RadialFunction: value count does not match grid size");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("RadialFunction: non-finite value");
  }
  values_.back() = 0.0;
}

RadialFunction RadialFunction::zeros(GridPtr grid) {
  const std::size_t n = grid ? grid->size() : 0;
  return RadialFunction(std::move(grid), std::vector<double>(n, 0.0));
}

RadialFunction RadialFunction::sample(GridPtr grid,
                                      const std::function<double(double)>& profile) {
  if (!grid) throw std::invalid_argument("RadialFunction: null grid");
  std::vector<double> values(grid->size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = profile(grid->node(i));
  return RadialFunction(std::move(grid), std::move(values));
}

double RadialFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

RadialFunction RadialFunction::scaled(double factor) const {
  RadialFunction out = *this;
  out *= factor;
  return out;
}

RadialFunction& RadialFunction::operator+=(const RadialFunction& other) {
  return axpy(1.0, other);
}

RadialFunction& RadialFunction::operator-=(const RadialFunction& other) {
  return axpy(-1.0, other);
}

RadialFunction& RadialFunction::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

RadialFunction& RadialFunction::axpy(double factor, const RadialFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += factor * other.values_[i];
  return *this;
}

RadialFunction operator+(RadialFunction lhs, const RadialFunction& rhs) { return lhs += rhs; }
RadialFunction operator-(RadialFunction lhs, const RadialFunction& rhs) { return lhs -= rhs; }
RadialFunction operator*(double factor, RadialFunction rhs) { return rhs *= factor; }

void require_same_grid(const RadialFunction& u, const RadialFunction& v) {
  if (!u.grid().same_as(v.grid())) {
    throw std::invalid_argument("radial functions live on different grids");
  }
}

double mass(const RadialFunction& u) {
  const auto w = u.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * u[i] * u[i];
  return sum;
}

double lp_norm_pow(const RadialFunction& u, double xi) {
  if (!(xi >= 1.0)) throw std::invalid_argument("lp_norm_pow: exponent must be >= 1");
  const auto w = u.grid().weights();
  double sum = 0.0;
  if (xi == 2.0) return mass(u);
  for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * std::pow(std::abs(u[i]), xi);
  return sum;
}

double grad_norm_sq(const RadialFunction& u) {
  const auto k = u.grid().flux();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double d = u[i + 1] - u[i];
    sum += k[i] * d * d;
  }
  return sum;
}

double dirichlet_form(const RadialFunction& u, const RadialFunction& v) {
  require_same_grid(u, v);
  const auto k = u.grid().flux();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    sum += k[i] * (u[i + 1] - u[i]) * (v[i + 1] - v[i]);
  }
  return sum;
}

double inner_product(const RadialFunction& u, const RadialFunction& v) {
  require_same_grid(u, v);
  const auto w = u.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * u[i] * v[i];
  return sum;
}

RadialFunction laplacian(const RadialFunction& u) {
  const auto& grid = u.grid();
  const auto k = grid.flux();
  const auto w = grid.weights();
  const std::size_t m = u.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double right = k[i] * (u[i + 1] - u[i]);
    const double left = (i > 0) ? k[i - 1] * (u[i] - u[i - 1]) : 0.0;
    out[i] = (right - left) / w[i];
  }
  return RadialFunction(u.grid_ptr(), std::move(out));
}

double l2_norm(const RadialFunction& u) {
  // the boundary value is pinned to zero, so the full weighted sum is the free-node norm
  return std::sqrt(mass(u));
}

}  // namespace normsol
