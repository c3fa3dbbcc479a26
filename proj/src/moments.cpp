#include "shakhov/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "shakhov/error.hpp"

namespace shakhov {

RawMoments raw_moments(std::span<const double> F, const VelocityGrid& grid) {
  if (F.size() != grid.size()) throw std::invalid_argument("raw_moments: size mismatch");
  // Lines of constant (v_1, v_2) are reduced first against 1, v_3, v_3^2, v_3^3,
  // then folded into the moments in ascending line order.
  RawMoments r;
  const auto& axis = grid.axis();
  const auto& w = grid.weights();
  const std::size_t n = axis.size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = axis[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double b = axis[j];
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (std::size_t l = 0; l < n; ++l, ++k) {
        const double c = axis[l];
        const double f = w[k] * F[k];
        const double fc = f * c;
        const double fcc = fc * c;
        s0 += f;
        s1 += fc;
        s2 += fcc;
        s3 += fcc * c;
      }
      const double ab2 = a * a + b * b;
      r.m0 += s0;
      r.m1[0] += a * s0;
      r.m1[1] += b * s0;
      r.m1[2] += s1;
      r.m2[0] += a * a * s0;
      r.m2[1] += b * b * s0;
      r.m2[2] += s2;
      r.m2[3] += a * b * s0;
      r.m2[4] += b * s1;
      r.m2[5] += a * s1;
      r.m3[0] += a * (ab2 * s0 + s2);
      r.m3[1] += b * (ab2 * s0 + s2);
      r.m3[2] += ab2 * s1 + s3;
    }
  }
  return r;
}

MacroState compute_macro(std::span<const double> F, const VelocityGrid& grid, std::size_t cell,
                         double rho_min) {
  const RawMoments r = raw_moments(F, grid);
  if (!(r.m0 > rho_min)) throw VacuumError(cell, r.m0);

  MacroState s;
  s.rho = r.m0;
  for (int i = 0; i < 3; ++i) s.U[i] = r.m1[i] / s.rho;

  const Vec3& U = s.U;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      s.Theta[sym_index(i, j)] = sym_at(r.m2, i, j) / s.rho - U[i] * U[j];
  s.T = s.trace_theta() / 3.0;

  // (v_i - U_i)|v - U|^2 expanded in raw moments.
  const double u2 = norm2(U);
  const double tr2 = r.m2[0] + r.m2[1] + r.m2[2];
  const double u_dot_m1 = dot(U, r.m1);
  for (int i = 0; i < 3; ++i) {
    double m2u = 0.0;
    for (int j = 0; j < 3; ++j) m2u += sym_at(r.m2, i, j) * U[j];
    s.q[i] = r.m3[i] - 2.0 * m2u + u2 * r.m1[i] - U[i] * tr2 + 2.0 * U[i] * u_dot_m1 -
             U[i] * u2 * r.m0;
  }
  return s;
}

MacroState compute_macro(const DistributionField& F, const VelocityGrid& grid, std::size_t cell,
                         double rho_min) {
  return compute_macro(F.cell(cell), grid, cell, rho_min);
}

GHMoments compute_gh(const MacroState& s) {
  GHMoments gh;
  const double rho = s.rho;
  const Vec3& U = s.U;
  for (int i = 0; i < 3; ++i) gh.G[i] = 0.5 * (rho * s.Theta[i] + rho * U[i] * U[i] - rho);
  gh.G[3] = rho * s.Theta[3] + rho * U[0] * U[1];
  gh.G[4] = rho * s.Theta[4] + rho * U[1] * U[2];
  gh.G[5] = rho * s.Theta[5] + rho * U[2] * U[0];

  const double u2 = norm2(U);
  const double tr = s.trace_theta();
  const double inv_sqrt10 = 1.0 / std::sqrt(10.0);
  for (int i = 0; i < 3; ++i) {
    double cross = 0.0;
    for (int j = 0; j < 3; ++j) cross += 2.0 * rho * U[j] * s.theta(i, j);
    gh.H[i] = inv_sqrt10 * (s.q[i] + cross + rho * U[i] * u2 + rho * U[i] * tr - 5.0 * rho * U[i]);
  }
  return gh;
}

}  // namespace shakhov
