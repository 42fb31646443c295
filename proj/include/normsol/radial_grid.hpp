#ifndef NORMSOL_RADIAL_GRID_HPP
#define NORMSOL_RADIAL_GRID_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace normsol {

enum class GradingKind { uniform, geometric };

/// Node distribution of a radial mesh. For geometric grading consecutive
/// cell widths grow by `ratio`, which concentrates nodes near the origin.
struct Grading {
  GradingKind kind = GradingKind::uniform;
  double ratio = 1.0;

  static Grading uniform() { return {}; }
  static Grading geometric(double ratio) { return {GradingKind::geometric, ratio}; }

  std::string name() const;
};

/// Truncated radial mesh on [0, R] for radial functions on R^N.
///
/// Integrals use a finite-volume (dual cell) rule: node i owns the shell
/// between the neighbouring cell midpoints, so w_i = |S^{N-1}| (e_{i+1}^N - e_i^N) / N.
/// Gradients live on cell midpoints with flux coefficient
/// kappa_i = |S^{N-1}| m_i^{N-1} / h_i. With this pairing the discrete
/// Laplacian is the exact weighted adjoint of the discrete gradient and
/// reduces to N u''(0) at the origin node.
class RadialGrid {
 public:
  RadialGrid(int dimension, std::vector<double> nodes, Grading grading);

  int dimension() const { return dimension_; }
  double radius() const { return nodes_.back(); }
  std::size_t size() const { return nodes_.size(); }
  const Grading& grading() const { return grading_; }

  /// Surface area of the unit sphere S^{N-1}.
  double sphere_area() const { return sphere_area_; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  /// One entry per cell [r_i, r_{i+1}].
  std::span<const double> flux() const { return flux_; }

  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double cell_width(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }

  bool same_as(const RadialGrid& other) const;

 private:
  int dimension_;
  Grading grading_;
  double sphere_area_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> flux_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Builds a mesh with `node_count` nodes from r = 0 to r = radius.
/// Throws std::invalid_argument for N < 2, non-positive or non-finite radius,
/// fewer than 3 nodes, or a geometric ratio that is not > 1.
GridPtr make_grid(int dimension, double radius, std::size_t node_count,
                  Grading grading = Grading::uniform());

/// Same grading family at twice the resolution: 2M - 1 nodes, the geometric
/// ratio replaced by its square root so every old node is kept.
GridPtr refine(const RadialGrid& grid);

/// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dimension);

}  // namespace normsol

#endif  // NORMSOL_RADIAL_GRID_HPP
