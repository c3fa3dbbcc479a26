#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace shakhov {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }

/**
 * Truncated tensor velocity lattice on [-v_max, v_max]^3 with the uniform
 * midpoint rule. Node k = (i, j, l) is stored at k = (i * n + j) * n + l, so the
 * third velocity component varies fastest.
 */
class VelocityGrid {
 public:
  VelocityGrid(int n_per_axis, double v_max);

  int n_per_axis() const { return n_; }
  double v_max() const { return v_max_; }
  double spacing() const { return h_; }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const Vec3& node(std::size_t k) const { return nodes_[k]; }
  double weight(std::size_t k) const { return weights_[k]; }

  // 1D midpoint abscissae shared by every axis.
  const std::vector<double>& axis() const { return axis_; }

  // Index of the node -v for node k.
  std::size_t mirror(std::size_t k) const { return size() - 1 - k; }

  // Largest |v_1| over the nodes; the transport CFL speed.
  double max_speed() const { return axis_.back(); }

 private:
  int n_;
  double v_max_;
  double h_;
  std::vector<double> axis_;
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
};

// Throws std::invalid_argument for odd n, n < 8 or v_max < 4.
VelocityGrid build_grid(int n_per_axis, double v_max);

enum class Summation { plain, compensated };

/**
 * Quadrature sum over the lattice. Terms are accumulated in ascending node
 * index; the compensated mode applies Neumaier's correction in the same order.
 */
double integrate(std::span<const double> field, const VelocityGrid& grid,
                 Summation mode = Summation::plain);

enum class FieldKind { absolute, perturbation };

/// Values over (spatial cell, velocity node), cell-major.
struct DistributionField {
  std::size_t n_cells = 0;
  std::size_t n_nodes = 0;
  FieldKind kind = FieldKind::absolute;
  std::vector<double> values;

  DistributionField() = default;
  DistributionField(std::size_t cells, std::size_t nodes, FieldKind k = FieldKind::absolute,
                    double fill = 0.0)
      : n_cells(cells), n_nodes(nodes), kind(k), values(cells * nodes, fill) {}

  std::span<double> cell(std::size_t c) { return {values.data() + c * n_nodes, n_nodes}; }
  std::span<const double> cell(std::size_t c) const {
    return {values.data() + c * n_nodes, n_nodes};
  }
  double& at(std::size_t c, std::size_t k) { return values[c * n_nodes + k]; }
  double at(std::size_t c, std::size_t k) const { return values[c * n_nodes + k]; }

  bool all_finite() const;
};

}  // namespace shakhov
