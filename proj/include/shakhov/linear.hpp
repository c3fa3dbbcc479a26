#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "shakhov/grid.hpp"
#include "shakhov/model.hpp"
#include "shakhov/moments.hpp"

namespace shakhov {

using NodeArray = std::vector<double>;

/// Normalized global Maxwellian (2 pi)^{-3/2} exp(-|v|^2/2) on the lattice.
NodeArray global_maxwellian(const VelocityGrid& grid);

/// f = (F - m)/sqrt(m), cell by cell.
DistributionField to_perturbation(const DistributionField& F, const VelocityGrid& grid);
/// F = m + sqrt(m) f.
DistributionField from_perturbation(const DistributionField& f, const VelocityGrid& grid);

/// L^2_v inner product through the lattice quadrature.
double inner(std::span<const double> a, std::span<const double> b, const VelocityGrid& grid);
double l2_norm(std::span<const double> a, const VelocityGrid& grid);

/**
 * The 13 fields e_1..e_13 (constant, v_i, (v_i^2 - 1)/2, v_1v_2, v_2v_3, v_1v_3,
 * v_i(|v|^2 - 5)/sqrt(10), all times sqrt(m)) and the 8 orthonormal fields
 * ebar_1..ebar_8 (constant, v_i, (|v|^2 - 3)/sqrt(6), v_i(|v|^2 - 5)/sqrt(10)).
 * Arrays are zero-indexed: e[0] is e_1, ebar[5] is ebar_6.
 */
struct BasisSet {
  NodeArray m;
  NodeArray sqrt_m;
  std::array<NodeArray, 13> e;
  std::array<NodeArray, 8> ebar;
  Eigen::Matrix<double, 8, 8> gram_ebar;
};

BasisSet build_bases(const VelocityGrid& grid);

/// <f, ebar_i> for i = 1..8 (zero-indexed).
std::array<double, 8> ebar_coefficients(std::span<const double> f, const BasisSet& basis,
                                        const VelocityGrid& grid);

enum class ProjectionKind { conservative, non_conservative, prandtl };

struct Projection {
  ProjectionKind kind = ProjectionKind::prandtl;
  double pr = 0.0;  // used by the prandtl projection only

  static Projection conservative() { return {ProjectionKind::conservative, 0.0}; }
  static Projection non_conservative() { return {ProjectionKind::non_conservative, 0.0}; }
  static Projection prandtl(double pr) { return {ProjectionKind::prandtl, pr}; }
};

/// P_c f, P_nc f, or P_Pr f = P_c f + (1 - Pr) P_nc f.
NodeArray project(std::span<const double> f, Projection which, const BasisSet& basis,
                  const VelocityGrid& grid);

/// L_Pr f = P_Pr f - f.
NodeArray apply_L(std::span<const double> f, double pr, const BasisSet& basis,
                  const VelocityGrid& grid);

struct CoercivityForm {
  double lhs = 0.0;    // <L_Pr f, f>
  double bound = 0.0;  // -min(Pr,1)||(I - P_c) f||^2, or -||(I - P_c - P_nc) f||^2 at Pr = 0
  bool holds(double pr, double tol = 1e-10) const;
};

CoercivityForm coercivity_form(std::span<const double> f, double pr, const BasisSet& basis,
                               const VelocityGrid& grid);

/**
 * Nonlinear remainder of the perturbed relaxation operator, evaluated as the
 * exact residual
 *   (1/tau) (S_Pr(F) - F)/sqrt(m) - (1/tau0) L_Pr f,   F = m + sqrt(m) f.
 */
NodeArray gamma_residual(std::span<const double> f, const ModelParams& params,
                         const VelocityGrid& grid, const BasisSet& basis);

struct FirstOrderDefect {
  double numerator = 0.0;  // ||S_Pr(m + sqrt(m) f) - m - sqrt(m) P_Pr f||
  double ratio = 0.0;      // numerator / ||f||^2 (0 when f = 0)
};

// Norms are taken in perturbation space: the difference is divided by sqrt(m).
FirstOrderDefect first_order_consistency(std::span<const double> f, const ModelParams& params,
                                         const VelocityGrid& grid, const BasisSet& basis);

using Matrix13 = Eigen::Matrix<double, 13, 13>;

/**
 * Jacobian of (rho, rho U, G, H) with respect to (rho, U, Theta, q), both in
 * the ordering (scalar, 3-vector, {11,22,33,12,23,31}, 3-vector).
 */
struct JacobianMatrix {
  Matrix13 entries;
  MacroState state;
};

JacobianMatrix jacobian(const MacroState& state);
JacobianMatrix jacobian_inverse(const MacroState& state);

/// The 13-vector (rho, rho U, G, H) of a state.
Eigen::Matrix<double, 13, 1> conserved_coordinates(const MacroState& state);

}  // namespace shakhov
