#include "shakhov/sampling.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace shakhov {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::Matrix3d theta_matrix(const MacroState& s) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = s.theta(i, j);
  return m;
}

}  // namespace

MacroState random_state(Rng& rng, const StateBounds& b) {
  MacroState s;
  s.rho = uniform(rng, b.rho_lo, b.rho_hi);
  for (int i = 0; i < 3; ++i) s.U[i] = uniform(rng, -b.u_max, b.u_max);

  std::normal_distribution<double> normal;
  Eigen::Quaterniond rot(normal(rng), normal(rng), normal(rng), normal(rng));
  rot.normalize();
  const Eigen::Matrix3d R = rot.toRotationMatrix();
  const Eigen::Vector3d lam(uniform(rng, b.theta_lo, b.theta_hi), uniform(rng, b.theta_lo, b.theta_hi),
                            uniform(rng, b.theta_lo, b.theta_hi));
  const Eigen::Matrix3d Th = R * lam.asDiagonal() * R.transpose();
  s.Theta = {Th(0, 0), Th(1, 1), Th(2, 2), Th(0, 1), Th(1, 2), Th(2, 0)};
  s.T = s.trace_theta() / 3.0;

  for (int i = 0; i < 3; ++i) s.q[i] = uniform(rng, -b.q_max, b.q_max);
  return s;
}

std::vector<double> sample_distribution(const MacroState& s, const VelocityGrid& grid) {
  const Eigen::Matrix3d Th = theta_matrix(s);
  const Eigen::Matrix3d inv = Th.inverse();
  const double norm = s.rho / (std::pow(2.0 * std::numbers::pi, 1.5) * std::sqrt(Th.determinant()));
  // By Wick's theorem the heat flux of the sample is A b with
  // A = 2 rho (tr(Theta) Theta + 2 Theta^2); A = 10 rho T^2 I when Theta = T I.
  const Eigen::Matrix3d A = 2.0 * s.rho * (Th.trace() * Th + 2.0 * Th * Th);
  const Eigen::Vector3d bvec = A.ldlt().solve(Eigen::Vector3d(s.q[0], s.q[1], s.q[2]));

  std::vector<double> F(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& v = grid.node(k);
    const Eigen::Vector3d c(v[0] - s.U[0], v[1] - s.U[1], v[2] - s.U[2]);
    const double quad = c.dot(inv * c);
    F[k] = norm * std::exp(-0.5 * quad) * (1.0 + bvec.dot(c) * (quad - 5.0));
  }
  return F;
}

std::vector<double> random_distribution(Rng& rng, const VelocityGrid& grid,
                                        const StateBounds& bounds) {
  return sample_distribution(random_state(rng, bounds), grid);
}

std::vector<double> random_perturbation(Rng& rng, const VelocityGrid& grid, const BasisSet& basis,
                                        double norm) {
  std::normal_distribution<double> normal;
  std::vector<double> f(grid.size(), 0.0);
  for (const auto& e : basis.e) {
    const double a = normal(rng);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += a * e[k];
  }
  // Monomials v1^a v2^b v3^c with a + b + c <= 4 reach outside span{e_i}.
  struct Mono {
    int a, b, c;
    double coef;
  };
  std::vector<Mono> monos;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + c <= 4; ++c) monos.push_back({a, b, c, 0.3 * normal(rng)});
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Vec3& v = grid.node(k);
    double p[3][5];
    for (int d = 0; d < 3; ++d) {
      p[d][0] = 1.0;
      for (int e = 1; e <= 4; ++e) p[d][e] = p[d][e - 1] * v[d];
    }
    double sum = 0.0;
    for (const auto& m : monos) sum += m.coef * p[0][m.a] * p[1][m.b] * p[2][m.c];
    f[k] += sum * basis.sqrt_m[k];
  }
  const double current = l2_norm(f, grid);
  for (double& x : f) x *= norm / current;
  return f;
}

}  // namespace shakhov
