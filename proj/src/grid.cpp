#include "shakhov/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shakhov {

VelocityGrid::VelocityGrid(int n_per_axis, double v_max)
    : n_(n_per_axis), v_max_(v_max), h_(2.0 * v_max / n_per_axis) {
  if (n_per_axis % 2 != 0) {
    throw std::invalid_argument("odd node count (" + std::to_string(n_per_axis) +
                                "): lattice must be symmetric under v -> -v");
  }
  if (n_per_axis < 8) {
    throw std::invalid_argument("n_per_axis must be >= 8, got " + std::to_string(n_per_axis));
  }
  if (!(v_max >= 4.0)) {
    throw std::invalid_argument("v_max must be >= 4, got " + std::to_string(v_max));
  }

  axis_.resize(n_);
  // Symmetric construction so that axis_[n-1-i] == -axis_[i] exactly.
  for (int i = 0; i < n_ / 2; ++i) {
    const double v = (static_cast<double>(n_ / 2 - i) - 0.5) * h_;
    axis_[i] = -v;
    axis_[n_ - 1 - i] = v;
  }

  const double w = h_ * h_ * h_;
  nodes_.reserve(static_cast<std::size_t>(n_) * n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int l = 0; l < n_; ++l) nodes_.push_back({axis_[i], axis_[j], axis_[l]});
  weights_.assign(nodes_.size(), w);
}

VelocityGrid build_grid(int n_per_axis, double v_max) { return VelocityGrid(n_per_axis, v_max); }

double integrate(std::span<const double> field, const VelocityGrid& grid, Summation mode) {
  if (field.size() != grid.size()) {
    throw std::invalid_argument("integrate: field has " + std::to_string(field.size()) +
                                " entries, grid has " + std::to_string(grid.size()) + " nodes");
  }
  const auto& w = grid.weights();
  if (mode == Summation::plain) {
    double sum = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k) sum += w[k] * field[k];
    return sum;
  }
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double term = w[k] * field[k];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

bool DistributionField::all_finite() const {
  for (double x : values)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace shakhov
