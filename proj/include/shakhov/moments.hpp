#pragma once

#include <array>
#include <span>

#include "shakhov/grid.hpp"

namespace shakhov {

// Symmetric 3x3 tensors are stored as {11, 22, 33, 12, 23, 31}.
using Sym6 = std::array<double, 6>;

inline constexpr int sym_index(int i, int j) {
  if (i == j) return i;
  const int lo = i < j ? i : j;
  const int hi = i < j ? j : i;
  return (lo == 0 && hi == 1) ? 3 : (lo == 1 && hi == 2) ? 4 : 5;
}

inline double sym_at(const Sym6& s, int i, int j) { return s[sym_index(i, j)]; }

struct MacroState {
  double rho = 1.0;
  Vec3 U{0.0, 0.0, 0.0};
  double T = 1.0;
  Sym6 Theta{1.0, 1.0, 1.0, 0.0, 0.0, 0.0};
  Vec3 q{0.0, 0.0, 0.0};

  double theta(int i, int j) const { return sym_at(Theta, i, j); }
  double trace_theta() const { return Theta[0] + Theta[1] + Theta[2]; }

  static MacroState equilibrium() { return {}; }
};

struct GHMoments {
  Sym6 G{};
  Vec3 H{};
};

inline constexpr double kRhoMin = 1e-8;

/**
 * Macroscopic fields of one cell of an absolute distribution. A single pass
 * accumulates the raw moments 1, v_i, v_i v_j and v_i |v|^2; the centred
 * moments are expanded about U afterwards. T is trace(Theta)/3.
 *
 * Throws VacuumError when rho <= rho_min.
 */
MacroState compute_macro(std::span<const double> F, const VelocityGrid& grid,
                         std::size_t cell = 0, double rho_min = kRhoMin);

MacroState compute_macro(const DistributionField& F, const VelocityGrid& grid, std::size_t cell,
                         double rho_min = kRhoMin);

GHMoments compute_gh(const MacroState& state);

// Raw moments as accumulated by compute_macro: partial sums along each line of
// constant (v1, v2), lines added in ascending index order.
struct RawMoments {
  double m0 = 0.0;
  Vec3 m1{};
  Sym6 m2{};
  Vec3 m3{};  // int F v_i |v|^2
};

RawMoments raw_moments(std::span<const double> F, const VelocityGrid& grid);

}  // namespace shakhov
