#pragma once

#include <span>
#include <vector>

#include "shakhov/grid.hpp"
#include "shakhov/moments.hpp"

namespace shakhov {

struct ModelParams {
  double pr = 2.0 / 3.0;  // Prandtl number
  double tau0 = 1.0;      // reference relaxation time
  double eta = 1.0;       // density exponent
  double w = 0.5;         // temperature exponent

  // Throws std::invalid_argument naming the violated bound.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// rho / (2 pi T)^{3/2} exp(-|v - U|^2 / (2T)) at a single velocity.
double maxwellian_value(const MacroState& state, const Vec3& v);

/// Local Maxwellian sampled on the lattice. Throws std::invalid_argument for T <= 0.
std::vector<double> maxwellian(const MacroState& state, const VelocityGrid& grid);
void maxwellian_into(const MacroState& state, const VelocityGrid& grid, std::span<double> out);

/**
 * Shakhov target for one cell with known macroscopic state:
 *   M [1 + (1 - Pr)/5 * q.(v-U)/(rho T^2) * (|v-U|^2/(2T) - 5/2)].
 * At Pr = 1 the bracket is exactly 1.
 */
void shakhov_target(const MacroState& state, double pr, const VelocityGrid& grid,
                    std::span<double> out);

/// Cell-by-cell Shakhov operator of an absolute field. Propagates VacuumError.
DistributionField shakhov_apply(const DistributionField& F, const ModelParams& params,
                                const VelocityGrid& grid);

/// 1/tau = rho^eta T^w / tau0.
double relaxation_rate(const MacroState& state, const ModelParams& params);

/// int (S - F)(v_i - U_i)|v - U|^2 dv + Pr q_i for one cell.
Vec3 cancellation_residual(std::span<const double> F, const ModelParams& params,
                           const VelocityGrid& grid);

/// Largest |residual| / (1 + |q|) over the cells of F.
double cancellation_residual(const DistributionField& F, const ModelParams& params,
                             const VelocityGrid& grid);

// Below this F is replaced by the floor inside the logarithm of F ln F.
inline constexpr double kLogFloor = 1e-30;

/// Sum over cells of cell_width * int F ln F dv.
double h_functional(const DistributionField& F, const VelocityGrid& grid, double cell_width = 1.0);

struct PositivityReport {
  double min_F = 0.0;
  double min_S = 0.0;
  std::size_t F_cell = 0, F_node = 0;
  std::size_t S_cell = 0, S_node = 0;

  static constexpr double kTolerance = 1e-12;
  bool flagged() const { return min_F < -kTolerance || min_S < -kTolerance; }
};

PositivityReport positivity_report(const DistributionField& F, const DistributionField& S);

}  // namespace shakhov
