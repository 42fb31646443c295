#include "normsol/radial_grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace normsol {

namespace {

// a^N - b^N without cancellation for a close to b.
double power_difference(double a, double b, int n) {
  double sum = 0.0;
  double ak = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += ak * std::pow(b, n - 1 - k);
    ak *= a;
  }
  return (a - b) * sum;
}

}  // namespace

std::string Grading::name() const {
  if (kind == GradingKind::uniform) return "uniform";
  std::ostringstream os;
  os.precision(17);
  os << "geometric(" << ratio << ")";
  return os.str();
}

double unit_sphere_area(int dimension) {
  const double half = 0.5 * dimension;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

RadialGrid::RadialGrid(int dimension, std::vector<double> nodes, Grading grading)
    : dimension_(dimension),
      grading_(grading),
      sphere_area_(unit_sphere_area(dimension)),
      nodes_(std::move(nodes)) {
  if (dimension_ < 2) throw std::invalid_argument("grid dimension must be >= 2");
  if (nodes_.size() < 3) throw std::invalid_argument("grid needs at least 3 nodes");
  if (nodes_.front() != 0.0) throw std::invalid_argument("first grid node must be r = 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !(nodes_[i] > nodes_[i - 1])) {
      throw std::invalid_argument("grid nodes must be finite and strictly increasing");
    }
  }

  const std::size_t m = nodes_.size();
  const int n = dimension_;
  weights_.resize(m);
  flux_.resize(m - 1);
  double left = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double right = (i + 1 < m) ? 0.5 * (nodes_[i] + nodes_[i + 1]) : nodes_[i];
    weights_[i] = sphere_area_ * power_difference(right, left, n) / n;
    left = right;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double mid = 0.5 * (nodes_[i] + nodes_[i + 1]);
    flux_[i] = sphere_area_ * std::pow(mid, n - 1) / (nodes_[i + 1] - nodes_[i]);
  }
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  return this == &other || (dimension_ == other.dimension_ && nodes_ == other.nodes_);
}

GridPtr make_grid(int dimension, double radius, std::size_t node_count, Grading grading) {
  if (dimension < 2) throw std::invalid_argument("make_grid: dimension must be >= 2");
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw std::invalid_argument("make_grid: radius must be positive and finite");
  }
  if (node_count < 3) throw std::invalid_argument("make_grid: need at least 3 nodes");

  std::vector<double> nodes(node_count);
  const std::size_t cells = node_count - 1;
  if (grading.kind == GradingKind::uniform) {
    for (std::size_t i = 0; i < node_count; ++i) {
      nodes[i] = radius * static_cast<double>(i) / static_cast<double>(cells);
    }
  } else {
    const double ratio = grading.ratio;
    if (!std::isfinite(ratio) || ratio <= 1.0) {
      throw std::invalid_argument("make_grid: geometric ratio must be > 1");
    }
    // h_k = h0 ratio^k with sum_k h_k = R
    const double log_ratio = std::log(ratio);
    const double total = std::expm1(cells * log_ratio) / std::expm1(log_ratio);
    if (!std::isfinite(total)) {
      throw std::invalid_argument("make_grid: geometric ratio too large for node count");
    }
    double acc = 0.0;
    for (std::size_t i = 1; i < node_count; ++i) {
      acc += std::exp(static_cast<double>(i - 1) * log_ratio);
      nodes[i] = radius * acc / total;
    }
    if (!(nodes[1] > 0.0)) {
      throw std::invalid_argument("make_grid: first geometric cell underflows");
    }
  }
  nodes.back() = radius;
  return std::make_shared<const RadialGrid>(dimension, std::move(nodes), grading);
}

GridPtr refine(const RadialGrid& grid) {
  Grading g = grid.grading();
  if (g.kind == GradingKind::geometric) g.ratio = std::sqrt(g.ratio);
  return make_grid(grid.dimension(), grid.radius(), 2 * grid.size() - 1, g);
}

}  // namespace normsol
