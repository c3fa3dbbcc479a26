#include "shakhov/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace shakhov {

void ModelParams::validate() const {
  if (!(pr >= 0.0)) throw std::invalid_argument("pr must be >= 0");
  if (!(tau0 > 0.0)) throw std::invalid_argument("tau0 must be > 0");
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (!std::isfinite(w)) throw std::invalid_argument("w must be finite");
}

namespace {

void check_state(const MacroState& s) {
  if (!(s.T > 0.0)) throw std::invalid_argument("maxwellian: temperature must be > 0");
  if (!(s.rho > 0.0)) throw std::invalid_argument("maxwellian: density must be > 0");
}

double maxwellian_prefactor(const MacroState& s) {
  return s.rho / std::pow(2.0 * std::numbers::pi * s.T, 1.5);
}

// Per-axis factors exp(-(v_a - U_a)^2 / (2T)); the Maxwellian is their product.
struct AxisFactors {
  std::vector<double> e[3];

  AxisFactors(const MacroState& s, const VelocityGrid& grid) {
    const auto& axis = grid.axis();
    for (int a = 0; a < 3; ++a) {
      e[a].resize(axis.size());
      for (std::size_t i = 0; i < axis.size(); ++i) {
        const double c = axis[i] - s.U[a];
        e[a][i] = std::exp(-c * c / (2.0 * s.T));
      }
    }
  }
};

}  // namespace

double maxwellian_value(const MacroState& state, const Vec3& v) {
  check_state(state);
  const Vec3 c{v[0] - state.U[0], v[1] - state.U[1], v[2] - state.U[2]};
  return maxwellian_prefactor(state) * std::exp(-norm2(c) / (2.0 * state.T));
}

void maxwellian_into(const MacroState& state, const VelocityGrid& grid, std::span<double> out) {
  check_state(state);
  if (out.size() != grid.size()) throw std::invalid_argument("maxwellian: size mismatch");
  const AxisFactors ax(state, grid);
  const double pref = maxwellian_prefactor(state);
  const std::size_t n = grid.axis().size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m0 = pref * ax.e[0][i];
    for (std::size_t j = 0; j < n; ++j) {
      const double m01 = m0 * ax.e[1][j];
      for (std::size_t l = 0; l < n; ++l, ++k) out[k] = m01 * ax.e[2][l];
    }
  }
}

std::vector<double> maxwellian(const MacroState& state, const VelocityGrid& grid) {
  std::vector<double> out(grid.size());
  maxwellian_into(state, grid, out);
  return out;
}

void shakhov_target(const MacroState& s, double pr, const VelocityGrid& grid,
                    std::span<double> out) {
  check_state(s);
  if (out.size() != grid.size()) throw std::invalid_argument("shakhov_target: size mismatch");

  const AxisFactors ax(s, grid);
  const double pref = maxwellian_prefactor(s);
  const double coef = (1.0 - pr) / 5.0 / (s.rho * s.T * s.T);
  const double inv_2T = 1.0 / (2.0 * s.T);
  const auto& axis = grid.axis();
  const std::size_t n = axis.size();

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c0 = axis[i] - s.U[0];
    const double m0 = pref * ax.e[0][i];
    for (std::size_t j = 0; j < n; ++j) {
      const double c1 = axis[j] - s.U[1];
      const double m01 = m0 * ax.e[1][j];
      for (std::size_t l = 0; l < n; ++l, ++k) {
        const double c2 = axis[l] - s.U[2];
        const double M = m01 * ax.e[2][l];
        const double qc = s.q[0] * c0 + s.q[1] * c1 + s.q[2] * c2;
        const double c_sq = c0 * c0 + c1 * c1 + c2 * c2;
        out[k] = M * (1.0 + coef * qc * (c_sq * inv_2T - 2.5));
      }
    }
  }
}

DistributionField shakhov_apply(const DistributionField& F, const ModelParams& params,
                                const VelocityGrid& grid) {
  DistributionField S(F.n_cells, F.n_nodes, FieldKind::absolute);
  for (std::size_t c = 0; c < F.n_cells; ++c) {
    const MacroState s = compute_macro(F.cell(c), grid, c);
    shakhov_target(s, params.pr, grid, S.cell(c));
  }
  return S;
}

double relaxation_rate(const MacroState& state, const ModelParams& params) {
  if (!(state.rho > 0.0)) throw std::invalid_argument("relaxation_rate: density must be > 0");
  if (!(state.T > 0.0)) throw std::invalid_argument("relaxation_rate: temperature must be > 0");
  return std::pow(state.rho, params.eta) * std::pow(state.T, params.w) / params.tau0;
}

Vec3 cancellation_residual(std::span<const double> F, const ModelParams& params,
                           const VelocityGrid& grid) {
  const MacroState s = compute_macro(F, grid);
  std::vector<double> S(grid.size());
  shakhov_target(s, params.pr, grid, S);

  Vec3 r{};
  const auto& nodes = grid.nodes();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 c{nodes[k][0] - s.U[0], nodes[k][1] - s.U[1], nodes[k][2] - s.U[2]};
    const double g = grid.weight(k) * (S[k] - F[k]) * norm2(c);
    for (int i = 0; i < 3; ++i) r[i] += g * c[i];
  }
  for (int i = 0; i < 3; ++i) r[i] += params.pr * s.q[i];
  return r;
}

double cancellation_residual(const DistributionField& F, const ModelParams& params,
                             const VelocityGrid& grid) {
  double worst = 0.0;
  for (std::size_t c = 0; c < F.n_cells; ++c) {
    const MacroState s = compute_macro(F.cell(c), grid, c);
    const Vec3 r = cancellation_residual(F.cell(c), params, grid);
    worst = std::max(worst, std::sqrt(norm2(r)) / (1.0 + std::sqrt(norm2(s.q))));
  }
  return worst;
}

double h_functional(const DistributionField& F, const VelocityGrid& grid, double cell_width) {
  double total = 0.0;
  std::vector<double> integrand(grid.size());
  for (std::size_t c = 0; c < F.n_cells; ++c) {
    const auto f = F.cell(c);
    for (std::size_t k = 0; k < f.size(); ++k) integrand[k] = f[k] * std::log(std::max(f[k], kLogFloor));
    total += cell_width * integrate(integrand, grid);
  }
  return total;
}

PositivityReport positivity_report(const DistributionField& F, const DistributionField& S) {
  PositivityReport r;
  r.min_F = std::numeric_limits<double>::infinity();
  r.min_S = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < F.n_cells; ++c)
    for (std::size_t k = 0; k < F.n_nodes; ++k)
      if (F.at(c, k) < r.min_F) {
        r.min_F = F.at(c, k);
        r.F_cell = c;
        r.F_node = k;
      }
  for (std::size_t c = 0; c < S.n_cells; ++c)
    for (std::size_t k = 0; k < S.n_nodes; ++k)
      if (S.at(c, k) < r.min_S) {
        r.min_S = S.at(c, k);
        r.S_cell = c;
        r.S_node = k;
      }
  return r;
}

}  // namespace shakhov
