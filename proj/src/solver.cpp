#include "shakhov/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shakhov/error.hpp"
#include "shakhov/sampling.hpp"

namespace shakhov {

namespace {

struct KindName {
  InitialKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {InitialKind::equilibrium, "equilibrium"}, {InitialKind::density, "density"},
    {InitialKind::velocity, "velocity"},       {InitialKind::temperature, "temperature"},
    {InitialKind::heat_flux, "heat_flux"},     {InitialKind::anisotropic, "anisotropic"},
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

const char* to_string(InitialKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

InitialKind initial_kind_from_string(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw std::invalid_argument("unknown initial condition kind '" + name + "'");
}

long SimConfig::steps() const { return std::lround(t_end / dt); }

void SimConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (n_v % 2 != 0) throw ConfigError("n_v must be even (odd node count)");
  if (n_v < 8) throw ConfigError("n_v must be >= 8");
  if (!(v_max >= 4.0)) throw ConfigError("v_max must be >= 4");
  if (n_cells < 1) throw ConfigError("n_cells must be >= 1");
  if (!(domain_length > 0.0)) throw ConfigError("domain_length must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
  if (output_every < 1) throw ConfigError("output_every must be >= 1");
  if (ic.mode < 0) throw ConfigError("ic.mode must be >= 0");

  const double relax_bound = kStabilityFraction * params.tau0;
  if (dt > relax_bound) {
    throw ConfigError("dt = " + fmt(dt) + " violates the relaxation stability bound dt <= " +
                      fmt(kStabilityFraction) + " * tau0 = " + fmt(relax_bound));
  }
  if (n_cells > 1) {
    const double cfl_bound = kCfl * cell_width() / v_max;
    if (dt > cfl_bound) {
      throw ConfigError("dt = " + fmt(dt) + " violates the CFL bound dt <= " + fmt(kCfl) +
                        " * dx / v_max = " + fmt(cfl_bound));
    }
  }
}

DistributionField initial_field(const SimConfig& config, const VelocityGrid& grid,
                                const BasisSet& basis) {
  const std::size_t n_cells = static_cast<std::size_t>(config.n_cells);
  const double dx = config.cell_width();
  const double A = config.ic.amplitude;
  DistributionField F(n_cells, grid.size(), FieldKind::absolute);

  // Homogeneous runs take the profile's peak value.
  auto profile = [&](std::size_t c, bool cosine) {
    if (n_cells == 1) return 1.0;
    const double phase = 2.0 * std::numbers::pi * config.ic.mode * (c + 0.5) * dx / config.domain_length;
    return cosine ? std::cos(phase) : std::sin(phase);
  };

  for (std::size_t c = 0; c < n_cells; ++c) {
    auto cell = F.cell(c);
    MacroState s = MacroState::equilibrium();
    switch (config.ic.kind) {
      case InitialKind::equilibrium:
        maxwellian_into(s, grid, cell);
        break;
      case InitialKind::density:
        s.rho = 1.0 + A * profile(c, false);
        maxwellian_into(s, grid, cell);
        break;
      case InitialKind::velocity:
        s.U[0] = A * profile(c, false);
        s.T = 1.0 - s.U[0] * s.U[0] / 3.0;
        maxwellian_into(s, grid, cell);
        break;
      case InitialKind::temperature:
        s.T = 1.0 + A * profile(c, false);
        maxwellian_into(s, grid, cell);
        break;
      case InitialKind::heat_flux: {
        const double amp = A * profile(c, true);
        for (std::size_t k = 0; k < grid.size(); ++k)
          cell[k] = basis.m[k] + basis.sqrt_m[k] * amp * basis.ebar[5][k];
        break;
      }
      case InitialKind::anisotropic: {
        s.Theta = {1.0 + A, 1.0 - A, 1.0, 0.5 * A, 0.0, 0.0};
        s.q = {A, 0.0, 0.0};
        const auto G = sample_distribution(s, grid);
        std::copy(G.begin(), G.end(), cell.begin());
        break;
      }
    }
  }

  if (config.enforce_third_moment_zero) {
    // Remove sum_i alpha_i sqrt(m) ebar_{5+i} from every cell, with alpha_i set
    // so the lattice third moment int int F v_i |v|^2 vanishes. The correction
    // carries no mass or energy and, by symmetry, no other third-moment component.
    Vec3 total{};
    for (std::size_t c = 0; c < n_cells; ++c) {
      const RawMoments r = raw_moments(F.cell(c), grid);
      for (int i = 0; i < 3; ++i) total[i] += r.m3[i];
    }
    for (int i = 0; i < 3; ++i) {
      std::vector<double> corr(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) corr[k] = basis.sqrt_m[k] * basis.ebar[5 + i][k];
      const double per_unit = raw_moments(corr, grid).m3[i];
      const double alpha = total[i] / (per_unit * static_cast<double>(n_cells));
      for (std::size_t c = 0; c < n_cells; ++c)
        for (std::size_t k = 0; k < grid.size(); ++k) F.at(c, k) -= alpha * corr[k];
    }
  }
  return F;
}

namespace {

// out = alpha * base + beta * (src + dt * R(src)), R the upwind right-hand side.
// Node k has v_1 = axis[k / n^2], so each block of n^2 nodes shares one upwind direction.
void upwind_update(const DistributionField& src, double dt, double dx, const VelocityGrid& grid,
                   const DistributionField* base, double alpha, double beta, DistributionField& out) {
  const std::size_t nc = src.n_cells;
  const std::size_t nn = src.n_nodes;
  const auto& axis = grid.axis();
  const std::size_t block = nn / axis.size();
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t left = (c + nc - 1) % nc;
    const std::size_t right = (c + 1) % nc;
    const double* fc = src.values.data() + c * nn;
    const double* fl = src.values.data() + left * nn;
    const double* fr = src.values.data() + right * nn;
    const double* b = base ? base->values.data() + c * nn : nullptr;
    double* o = out.values.data() + c * nn;
    for (std::size_t i = 0; i < axis.size(); ++i) {
      const double nu = -axis[i] * dt / dx;
      const std::size_t lo = i * block, hi = lo + block;
      const double* up = axis[i] > 0.0 ? fl : fc;
      const double* down = axis[i] > 0.0 ? fc : fr;
      if (b) {
        for (std::size_t k = lo; k < hi; ++k) o[k] = alpha * b[k] + beta * (fc[k] + nu * (down[k] - up[k]));
      } else {
        for (std::size_t k = lo; k < hi; ++k) o[k] = beta * (fc[k] + nu * (down[k] - up[k]));
      }
    }
  }
}

}  // namespace

DistributionField transport_step(const DistributionField& F, double dt, const VelocityGrid& grid,
                                 double dx) {
  if (F.n_cells <= 1) return F;
  const double courant = grid.max_speed() * dt / dx;
  if (courant > 1.0) {
    throw StabilityError("transport CFL violated: max|v| dt / dx = " + fmt(courant) + " > 1");
  }
  DistributionField stage(F.n_cells, F.n_nodes, F.kind);
  upwind_update(F, dt, dx, grid, nullptr, 0.0, 1.0, stage);
  DistributionField out(F.n_cells, F.n_nodes, F.kind);
  upwind_update(stage, dt, dx, grid, &F, 0.5, 0.5, out);
  return out;
}

namespace {

// dst = base + dt * (1/tau)(S(src) - src) for one cell.
void relaxation_euler(std::span<const double> src, std::span<const double> base, double dt,
                      const ModelParams& params, const VelocityGrid& grid, std::size_t cell,
                      std::vector<double>& S, std::span<double> dst) {
  const MacroState s = compute_macro(src, grid, cell);
  const double rate = relaxation_rate(s, params);
  if (dt * rate > SimConfig::kStabilityFraction) {
    throw StabilityError("relaxation stability violated in cell " + std::to_string(cell) +
                         ": dt = " + fmt(dt) + " > 0.5 tau = " + fmt(0.5 / rate));
  }
  shakhov_target(s, params.pr, grid, S);
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = base[k] + dt * rate * (S[k] - src[k]);
}

}  // namespace

DistributionField relaxation_step(const DistributionField& F, double dt, const ModelParams& params,
                                  const VelocityGrid& grid) {
  DistributionField out(F.n_cells, F.n_nodes, F.kind);
  std::vector<double> S(grid.size());
  std::vector<double> stage(grid.size());
  for (std::size_t c = 0; c < F.n_cells; ++c) {
    const auto f0 = F.cell(c);
    relaxation_euler(f0, f0, dt, params, grid, c, S, stage);
    auto dst = out.cell(c);
    relaxation_euler(stage, stage, dt, params, grid, c, S, dst);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = 0.5 * f0[k] + 0.5 * dst[k];
  }
  return out;
}

DistributionField step(const DistributionField& F, double dt, const ModelParams& params,
                       const VelocityGrid& grid, double dx) {
  DistributionField G = transport_step(F, 0.5 * dt, grid, dx);
  G = relaxation_step(G, dt, params, grid);
  return transport_step(G, 0.5 * dt, grid, dx);
}

MicroMacroCoeffs micro_macro_coeffs(std::span<const double> f, const VelocityGrid& grid,
                                    const BasisSet& basis) {
  // Raw integrals against sqrt(m), v_i sqrt(m), (|v|^2-3) sqrt(m), v_i(|v|^2-5) sqrt(m).
  double i0 = 0.0, i2 = 0.0;
  Vec3 i1{}, i3{};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& v = grid.node(k);
    const double g = grid.weight(k) * f[k] * basis.sqrt_m[k];
    const double v2 = norm2(v);
    i0 += g;
    i2 += g * (v2 - 3.0);
    for (int i = 0; i < 3; ++i) {
      i1[i] += g * v[i];
      i3[i] += g * v[i] * (v2 - 5.0);
    }
  }
  MicroMacroCoeffs out;
  out.a = i0 - 0.5 * i2;
  out.c = i2 / 6.0;
  for (int i = 0; i < 3; ++i) {
    out.b[i] = i1[i] - 0.5 * i3[i];
    out.d[i] = i3[i] / 10.0;
  }
  return out;
}

Vec3 third_moment_source(const DistributionField& F, const ModelParams& params,
                         const VelocityGrid& grid, double dx) {
  Vec3 total{};
  for (std::size_t c = 0; c < F.n_cells; ++c) {
    const MacroState s = compute_macro(F.cell(c), grid, c);
    const double rate = relaxation_rate(s, params);
    for (int i = 0; i < 3; ++i) {
      double cross = 0.0;
      for (int j = 0; j < 3; ++j) cross += 2.0 * s.rho * s.U[j] * s.theta(i, j);
      total[i] += dx * rate * (-params.pr * s.q[i] + 2.0 * s.U[i] * s.rho * s.T - cross);
    }
  }
  return total;
}

double l2_norm_xv(const DistributionField& f, const VelocityGrid& grid, double dx) {
  double sum = 0.0;
  for (std::size_t c = 0; c < f.n_cells; ++c) {
    const auto cell = f.cell(c);
    sum += dx * inner(cell, cell, grid);
  }
  return std::sqrt(sum);
}

namespace {

double dx_norm2(const DistributionField& f, const VelocityGrid& grid, double dx) {
  const std::size_t nc = f.n_cells;
  if (nc <= 1) return 0.0;
  double sum = 0.0;
  std::vector<double> diff(f.n_nodes);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto r = f.cell((c + 1) % nc);
    const auto l = f.cell((c + nc - 1) % nc);
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = (r[k] - l[k]) / (2.0 * dx);
    sum += dx * inner(diff, diff, grid);
  }
  return sum;
}

double dt_norm2(const DistributionField& f, const DistributionField& prev, double dt,
                const VelocityGrid& grid, double dx) {
  double sum = 0.0;
  std::vector<double> diff(f.n_nodes);
  for (std::size_t c = 0; c < f.n_cells; ++c) {
    const auto a = f.cell(c);
    const auto b = prev.cell(c);
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = (a[k] - b[k]) / dt;
    sum += dx * inner(diff, diff, grid);
  }
  return sum;
}

}  // namespace

void EnergyFunctional::push(double t, const DistributionField& f) {
  double total = l2_norm_xv(f, *grid_, dx_);
  total *= total;
  total += dx_norm2(f, *grid_, dx_);
  if (last_t_) {
    const double h = t - *last_t_;
    if (h > 0.0) total += dt_norm2(f, last_f_, h, *grid_, dx_);
    production_ += 0.5 * h * (2.0 * instant_ + total);
  }
  instant_ = 0.5 * total;
  last_t_ = t;
  last_f_ = f;
}

EnergyValues energy_functional(std::span<const double> times,
                               std::span<const DistributionField> history, const VelocityGrid& grid,
                               double dx) {
  if (times.size() != history.size()) throw std::invalid_argument("energy_functional: size mismatch");
  EnergyFunctional acc(grid, dx);
  for (std::size_t i = 0; i < times.size(); ++i) acc.push(times[i], history[i]);
  return {acc.instant(), acc.production()};
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> norms) {
  if (t.size() != norms.size()) throw std::invalid_argument("fit_decay: size mismatch");
  if (t.size() < 10) throw std::invalid_argument("fit_decay: need at least 10 samples");
  const double n = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0;
  std::vector<double> y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(norms[i] > 1e-14)) throw std::invalid_argument("fit_decay: norm below 1e-14");
    y[i] = std::log(norms[i]);
    st += t[i];
    sy += y[i];
  }
  const double tm = st / n, ym = sy / n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  if (!(stt > 0.0)) throw std::invalid_argument("fit_decay: degenerate time window");
  const double slope = sty / stt;
  DecayFit fit;
  fit.rate = -slope;
  // Exactly log-linear data (including constant) fits perfectly.
  fit.r_squared = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  return fit;
}

double BalanceSample::residual() const {
  double r = 0.0;
  for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(lhs[i] - rhs[i]));
  return r;
}

std::vector<BalanceSample> third_moment_balance(std::span<const DiagnosticsRecord> records) {
  if (records.size() < 3) throw std::invalid_argument("third_moment_balance: need at least 3 snapshots");
  std::vector<BalanceSample> out;
  for (std::size_t k = 1; k + 1 < records.size(); ++k) {
    const auto& prev = records[k - 1];
    const auto& next = records[k + 1];
    BalanceSample s;
    s.t = records[k].t;
    const double h = next.t - prev.t;
    for (int i = 0; i < 3; ++i) {
      s.lhs[i] = (next.third_moment[i] - prev.third_moment[i]) / h;
      s.rhs[i] = records[k].third_moment_source[i];
    }
    out.push_back(s);
  }
  return out;
}

SimContext::SimContext(const SimConfig& config)
    : grid(build_grid(config.n_v, config.v_max)), basis(build_bases(grid)), dx(config.cell_width()) {}

DiagnosticsRecord compute_diagnostics(double t, const DistributionField& F, const ModelParams& params,
                                      const SimContext& ctx, const EnergyFunctional& energy) {
  const VelocityGrid& grid = ctx.grid;
  const double dx = ctx.dx;
  DiagnosticsRecord r;
  r.t = t;

  const DistributionField S = shakhov_apply(F, params, grid);
  const auto pos = positivity_report(F, S);
  r.min_F = pos.min_F;
  r.min_S = pos.min_S;

  std::vector<double> f(grid.size());
  for (std::size_t c = 0; c < F.n_cells; ++c) {
    const auto cell = F.cell(c);
    const RawMoments raw = raw_moments(cell, grid);
    r.mass += dx * raw.m0;
    for (int i = 0; i < 3; ++i) {
      r.momentum[i] += dx * raw.m1[i];
      r.third_moment[i] += dx * raw.m3[i];
    }
    r.energy += dx * (raw.m2[0] + raw.m2[1] + raw.m2[2]);

    const MacroState s = compute_macro(cell, grid, c);
    r.max_drho = std::max(r.max_drho, std::abs(s.rho - 1.0));
    r.max_U = std::max(r.max_U, std::sqrt(norm2(s.U)));
    for (int i = 0; i < 6; ++i)
      r.max_dTheta = std::max(r.max_dTheta, std::abs(s.Theta[i] - (i < 3 ? 1.0 : 0.0)));
    r.max_q = std::max(r.max_q, std::sqrt(norm2(s.q)));

    for (std::size_t k = 0; k < grid.size(); ++k)
      f[k] = (cell[k] - ctx.basis.m[k]) / ctx.basis.sqrt_m[k];
    const MicroMacroCoeffs mm = micro_macro_coeffs(f, grid, ctx.basis);
    r.coeffs.a += dx * mm.a;
    r.coeffs.c += dx * mm.c;
    for (int i = 0; i < 3; ++i) {
      r.coeffs.b[i] += dx * mm.b[i];
      r.coeffs.d[i] += dx * mm.d[i];
    }
    r.max_abs_a = std::max(r.max_abs_a, std::abs(mm.a));
    r.max_abs_b = std::max(r.max_abs_b, std::sqrt(norm2(mm.b)));
    r.max_abs_c = std::max(r.max_abs_c, std::abs(mm.c));
    r.max_abs_d = std::max(r.max_abs_d, std::sqrt(norm2(mm.d)));
  }

  r.l2_norm_f = l2_norm_xv(to_perturbation(F, grid), grid, dx);
  r.energy_instant = energy.instant();
  r.energy_production = energy.production();
  r.h_value = h_functional(F, grid, dx);
  r.third_moment_source = third_moment_source(F, params, grid, dx);
  return r;
}

RunResult run(const SimConfig& config) {
  config.validate();
  const SimContext ctx(config);
  return run(config, initial_field(config, ctx.grid, ctx.basis));
}

RunResult run(const SimConfig& config, DistributionField initial) {
  config.validate();
  const SimContext ctx(config);
  if (initial.n_cells != static_cast<std::size_t>(config.n_cells) || initial.n_nodes != ctx.grid.size())
    throw std::invalid_argument("run: initial field does not match the configuration");

  RunResult result;
  EnergyFunctional energy(ctx.grid, ctx.dx);
  DistributionField F = std::move(initial);
  const long n_steps = config.steps();

  energy.push(0.0, to_perturbation(F, ctx.grid));
  try {
    result.records.push_back(compute_diagnostics(0.0, F, config.params, ctx, energy));
    for (long n = 1; n <= n_steps; ++n) {
      F = step(F, config.dt, config.params, ctx.grid, ctx.dx);
      const double t = n * config.dt;
      // The energy functional samples the recorded snapshots only.
      if (n % config.output_every == 0 || n == n_steps) {
        energy.push(t, to_perturbation(F, ctx.grid));
        result.records.push_back(compute_diagnostics(t, F, config.params, ctx, energy));
      }
      result.last_good_time = t;
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.final_state = std::move(F);
  return result;
}

}  // namespace shakhov
