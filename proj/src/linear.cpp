#include "shakhov/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shakhov {

namespace {

const double kSqrt6 = std::sqrt(6.0);
const double kSqrt10 = std::sqrt(10.0);

// Off-diagonal slots 12, 23, 31 as index pairs.
constexpr std::array<std::array<int, 2>, 3> kOffPairs{{{0, 1}, {1, 2}, {2, 0}}};

}  // namespace

NodeArray global_maxwellian(const VelocityGrid& grid) {
  return maxwellian(MacroState::equilibrium(), grid);
}

DistributionField to_perturbation(const DistributionField& F, const VelocityGrid& grid) {
  const NodeArray m = global_maxwellian(grid);
  DistributionField f(F.n_cells, F.n_nodes, FieldKind::perturbation);
  for (std::size_t c = 0; c < F.n_cells; ++c)
    for (std::size_t k = 0; k < F.n_nodes; ++k)
      f.at(c, k) = (F.at(c, k) - m[k]) / std::sqrt(m[k]);
  return f;
}

DistributionField from_perturbation(const DistributionField& f, const VelocityGrid& grid) {
  const NodeArray m = global_maxwellian(grid);
  DistributionField F(f.n_cells, f.n_nodes, FieldKind::absolute);
  for (std::size_t c = 0; c < f.n_cells; ++c)
    for (std::size_t k = 0; k < f.n_nodes; ++k) F.at(c, k) = m[k] + std::sqrt(m[k]) * f.at(c, k);
  return F;
}

double inner(std::span<const double> a, std::span<const double> b, const VelocityGrid& grid) {
  if (a.size() != grid.size() || b.size() != grid.size())
    throw std::invalid_argument("inner: size mismatch");
  double sum = 0.0;
  const auto& w = grid.weights();
  for (std::size_t k = 0; k < a.size(); ++k) sum += w[k] * a[k] * b[k];
  return sum;
}

double l2_norm(std::span<const double> a, const VelocityGrid& grid) {
  return std::sqrt(inner(a, a, grid));
}

BasisSet build_bases(const VelocityGrid& grid) {
  BasisSet b;
  b.m = global_maxwellian(grid);
  const std::size_t n = grid.size();
  b.sqrt_m.resize(n);
  for (std::size_t k = 0; k < n; ++k) b.sqrt_m[k] = std::sqrt(b.m[k]);

  for (auto& e : b.e) e.resize(n);
  for (auto& e : b.ebar) e.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& v = grid.node(k);
    const double s = b.sqrt_m[k];
    const double v2 = norm2(v);
    b.e[0][k] = s;
    for (int i = 0; i < 3; ++i) {
      b.e[1 + i][k] = v[i] * s;
      b.e[4 + i][k] = 0.5 * (v[i] * v[i] - 1.0) * s;
      b.e[10 + i][k] = (v[i] * v2 - 5.0 * v[i]) / kSqrt10 * s;
    }
    b.e[7][k] = v[0] * v[1] * s;
    b.e[8][k] = v[1] * v[2] * s;
    b.e[9][k] = v[0] * v[2] * s;

    b.ebar[0][k] = s;
    for (int i = 0; i < 3; ++i) {
      b.ebar[1 + i][k] = v[i] * s;
      b.ebar[5 + i][k] = v[i] * (v2 - 5.0) / kSqrt10 * s;
    }
    b.ebar[4][k] = (v2 - 3.0) / kSqrt6 * s;
  }

  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) b.gram_ebar(i, j) = inner(b.ebar[i], b.ebar[j], grid);
  return b;
}

std::array<double, 8> ebar_coefficients(std::span<const double> f, const BasisSet& basis,
                                        const VelocityGrid& grid) {
  std::array<double, 8> c{};
  for (int i = 0; i < 8; ++i) c[i] = inner(f, basis.ebar[i], grid);
  return c;
}

NodeArray project(std::span<const double> f, Projection which, const BasisSet& basis,
                  const VelocityGrid& grid) {
  const auto coef = ebar_coefficients(f, basis, grid);
  std::array<double, 8> scale{};
  switch (which.kind) {
    case ProjectionKind::conservative:
      std::fill(scale.begin(), scale.begin() + 5, 1.0);
      break;
    case ProjectionKind::non_conservative:
      std::fill(scale.begin() + 5, scale.end(), 1.0);
      break;
    case ProjectionKind::prandtl:
      std::fill(scale.begin(), scale.begin() + 5, 1.0);
      std::fill(scale.begin() + 5, scale.end(), 1.0 - which.pr);
      break;
  }
  NodeArray out(f.size(), 0.0);
  for (int i = 0; i < 8; ++i) {
    const double a = scale[i] * coef[i];
    if (a == 0.0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += a * basis.ebar[i][k];
  }
  return out;
}

NodeArray apply_L(std::span<const double> f, double pr, const BasisSet& basis,
                  const VelocityGrid& grid) {
  NodeArray out = project(f, Projection::prandtl(pr), basis, grid);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= f[k];
  return out;
}

bool CoercivityForm::holds(double pr, double tol) const {
  if (pr > 0.0) return lhs <= bound + tol;
  return std::abs(lhs - bound) <= tol;
}

CoercivityForm coercivity_form(std::span<const double> f, double pr, const BasisSet& basis,
                               const VelocityGrid& grid) {
  CoercivityForm out;
  const NodeArray Lf = apply_L(f, pr, basis, grid);
  out.lhs = inner(Lf, f, grid);

  NodeArray rest = project(f, Projection::conservative(), basis, grid);
  if (pr == 0.0) {
    const NodeArray nc = project(f, Projection::non_conservative(), basis, grid);
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] += nc[k];
  }
  for (std::size_t k = 0; k < rest.size(); ++k) rest[k] = f[k] - rest[k];
  const double micro = inner(rest, rest, grid);
  out.bound = pr > 0.0 ? -std::min(pr, 1.0) * micro : -micro;
  return out;
}

NodeArray gamma_residual(std::span<const double> f, const ModelParams& params,
                         const VelocityGrid& grid, const BasisSet& basis) {
  const std::size_t n = grid.size();
  NodeArray F(n);
  for (std::size_t k = 0; k < n; ++k) F[k] = basis.m[k] + basis.sqrt_m[k] * f[k];
  const MacroState s = compute_macro(F, grid);
  NodeArray S(n);
  shakhov_target(s, params.pr, grid, S);
  const double rate = relaxation_rate(s, params);

  NodeArray out = apply_L(f, params.pr, basis, grid);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = rate * (S[k] - F[k]) / basis.sqrt_m[k] - out[k] / params.tau0;
  return out;
}

FirstOrderDefect first_order_consistency(std::span<const double> f, const ModelParams& params,
                                         const VelocityGrid& grid, const BasisSet& basis) {
  const std::size_t n = grid.size();
  NodeArray F(n);
  for (std::size_t k = 0; k < n; ++k) F[k] = basis.m[k] + basis.sqrt_m[k] * f[k];
  const MacroState s = compute_macro(F, grid);
  NodeArray S(n);
  shakhov_target(s, params.pr, grid, S);
  const NodeArray Pf = project(f, Projection::prandtl(params.pr), basis, grid);

  NodeArray diff(n);
  for (std::size_t k = 0; k < n; ++k)
    diff[k] = (S[k] - basis.m[k] - Pf[k] * basis.sqrt_m[k]) / basis.sqrt_m[k];

  FirstOrderDefect out;
  out.numerator = l2_norm(diff, grid);
  const double fn2 = inner(f, f, grid);
  out.ratio = fn2 > 0.0 ? out.numerator / fn2 : 0.0;
  return out;
}

Eigen::Matrix<double, 13, 1> conserved_coordinates(const MacroState& s) {
  Eigen::Matrix<double, 13, 1> y;
  const GHMoments gh = compute_gh(s);
  y(0) = s.rho;
  for (int i = 0; i < 3; ++i) y(1 + i) = s.rho * s.U[i];
  for (int i = 0; i < 6; ++i) y(4 + i) = gh.G[i];
  for (int i = 0; i < 3; ++i) y(10 + i) = gh.H[i];
  return y;
}

namespace {

// Blocks of the H rows of J: dH/drho, dH/dU, dH/dTheta_diag.
struct HBlocks {
  Vec3 A{};
  std::array<Vec3, 3> B{};
  std::array<Vec3, 3> C{};
};

HBlocks h_blocks(const MacroState& s) {
  HBlocks h;
  const double rho = s.rho;
  const Vec3& U = s.U;
  const double u2 = norm2(U);
  const double tr = s.trace_theta();
  for (int i = 0; i < 3; ++i) {
    double cross = 0.0;
    for (int j = 0; j < 3; ++j) cross += 2.0 * U[j] * s.theta(i, j);
    h.A[i] = (cross + U[i] * u2 + U[i] * tr - 5.0 * U[i]) / kSqrt10;
    for (int j = 0; j < 3; ++j) {
      const double d = i == j ? 1.0 : 0.0;
      h.B[i][j] =
          (2.0 * rho * s.theta(i, j) + 2.0 * rho * U[i] * U[j] + (rho * tr + rho * u2 - 5.0 * rho) * d) /
          kSqrt10;
      h.C[i][j] = (2.0 * rho * U[i] * d + rho * U[i]) / kSqrt10;
    }
  }
  return h;
}

void require_density(const MacroState& s) {
  if (!(s.rho > 0.0)) throw std::invalid_argument("jacobian: density must be > 0");
}

}  // namespace

JacobianMatrix jacobian(const MacroState& s) {
  require_density(s);
  Matrix13 J = Matrix13::Zero();
  const double rho = s.rho;
  const Vec3& U = s.U;

  J(0, 0) = 1.0;
  for (int i = 0; i < 3; ++i) {
    J(1 + i, 0) = U[i];
    J(1 + i, 1 + i) = rho;

    J(4 + i, 0) = 0.5 * (s.Theta[i] + U[i] * U[i] - 1.0);
    J(4 + i, 1 + i) = rho * U[i];
    J(4 + i, 4 + i) = 0.5 * rho;
  }
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = kOffPairs[k];
    J(7 + k, 0) = s.Theta[3 + k] + U[a] * U[b];
    J(7 + k, 1 + a) = rho * U[b];
    J(7 + k, 1 + b) = rho * U[a];
    J(7 + k, 7 + k) = rho;
  }

  const HBlocks h = h_blocks(s);
  for (int i = 0; i < 3; ++i) {
    J(10 + i, 0) = h.A[i];
    for (int j = 0; j < 3; ++j) {
      J(10 + i, 1 + j) = h.B[i][j];
      J(10 + i, 4 + j) = h.C[i][j];
    }
    for (int k = 0; k < 3; ++k) {
      const auto [a, b] = kOffPairs[k];
      if (i == a) J(10 + i, 7 + k) = 2.0 * rho * U[b] / kSqrt10;
      if (i == b) J(10 + i, 7 + k) = 2.0 * rho * U[a] / kSqrt10;
    }
    J(10 + i, 10 + i) = 1.0 / kSqrt10;
  }
  return {J, s};
}

JacobianMatrix jacobian_inverse(const MacroState& s) {
  require_density(s);
  Matrix13 K = Matrix13::Zero();
  const double rho = s.rho;
  const Vec3& U = s.U;
  const double u2 = norm2(U);

  K(0, 0) = 1.0;
  for (int i = 0; i < 3; ++i) {
    K(1 + i, 0) = -U[i] / rho;
    K(1 + i, 1 + i) = 1.0 / rho;

    K(4 + i, 0) = (-s.Theta[i] + U[i] * U[i] + 1.0) / rho;
    K(4 + i, 1 + i) = -2.0 * U[i] / rho;
    K(4 + i, 4 + i) = 2.0 / rho;
  }
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = kOffPairs[k];
    K(7 + k, 0) = (-s.Theta[3 + k] + U[a] * U[b]) / rho;
    K(7 + k, 1 + a) = -U[b] / rho;
    K(7 + k, 1 + b) = -U[a] / rho;
    K(7 + k, 7 + k) = 1.0 / rho;
  }

  const HBlocks h = h_blocks(s);
  for (int i = 0; i < 3; ++i) {
    // A'_i = 2 sum_{j != i}(U_j Theta_ij - U_j^2 U_i) - sqrt10 A_i
    //        + (sqrt10/rho) sum_j (U_j B_ij + C_ij (Theta_jj - U_j^2 - 1))
    double off = 0.0;
    double blocks = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) off += U[j] * s.theta(i, j) - U[j] * U[j] * U[i];
      blocks += U[j] * h.B[i][j] + h.C[i][j] * (s.Theta[j] - U[j] * U[j] - 1.0);
    }
    K(10 + i, 0) = 2.0 * off - kSqrt10 * h.A[i] + kSqrt10 / rho * blocks;

    for (int j = 0; j < 3; ++j) {
      const double d = i == j ? 1.0 : 0.0;
      // B'_ij = (10 rho (U_i U_j + (|U|^2 - 2U_i^2) delta_ij) - 5 sqrt10 B_ij
      //          + 10 sqrt10 U_j C_ij) / (5 rho)
      K(10 + i, 1 + j) = (10.0 * rho * (U[i] * U[j] + (u2 - 2.0 * U[i] * U[i]) * d) -
                          5.0 * kSqrt10 * h.B[i][j] + 10.0 * kSqrt10 * U[j] * h.C[i][j]) /
                         (5.0 * rho);
      K(10 + i, 4 + j) = -2.0 * kSqrt10 / rho * h.C[i][j];
    }
    for (int k = 0; k < 3; ++k) {
      const auto [a, b] = kOffPairs[k];
      if (i == a) K(10 + i, 7 + k) = -2.0 * U[b];
      if (i == b) K(10 + i, 7 + k) = -2.0 * U[a];
    }
    K(10 + i, 10 + i) = kSqrt10;
  }
  return {K, s};
}

}  // namespace shakhov
