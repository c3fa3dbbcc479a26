#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "shakhov/grid.hpp"
#include "shakhov/linear.hpp"
#include "shakhov/moments.hpp"

namespace shakhov {

using Rng = std::mt19937_64;

/**
 * Admissible set for random macroscopic states: rho in [rho_lo, rho_hi],
 * each U_i and q_i in [-u_max, u_max] / [-q_max, q_max], Theta = R diag(l) R^T
 * with a random rotation R and eigenvalues l in [theta_lo, theta_hi].
 */
struct StateBounds {
  double rho_lo = 0.5, rho_hi = 2.0;
  double u_max = 0.5;
  double theta_lo = 0.5, theta_hi = 2.0;
  double q_max = 0.5;

  // Tighter set used when the state is sampled on a velocity lattice: keeps
  // every Gaussian well inside [-8, 8]^3.
  static StateBounds near_equilibrium() { return {0.5, 2.0, 0.3, 0.7, 1.4, 0.3}; }
};

MacroState random_state(Rng& rng, const StateBounds& bounds = {});

/**
 * Anisotropic Gaussian with the state's (rho, U, Theta) times a heat-flux
 * shaped factor 1 + (b . C)(C^T Theta^{-1} C - 5) with C = v - U. The factor
 * leaves rho, U and Theta unchanged; b is solved from q so the heat flux of
 * the sample is q up to quadrature error.
 */
std::vector<double> sample_distribution(const MacroState& state, const VelocityGrid& grid);

/// Random near-equilibrium absolute distribution on the lattice.
std::vector<double> random_distribution(Rng& rng, const VelocityGrid& grid,
                                        const StateBounds& bounds = StateBounds::near_equilibrium());

/**
 * Random perturbation: a random combination of the 13-basis fields plus a
 * random polynomial of degree 4 in v, all times sqrt(m), scaled to L^2 norm
 * `norm`.
 */
std::vector<double> random_perturbation(Rng& rng, const VelocityGrid& grid, const BasisSet& basis,
                                        double norm = 1.0);

}  // namespace shakhov
