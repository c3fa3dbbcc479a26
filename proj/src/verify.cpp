#include "shakhov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "shakhov/model.hpp"
#include "shakhov/moments.hpp"
#include "shakhov/sampling.hpp"

namespace shakhov {

namespace {

std::string fmt(double x, const char* spec = "%.3e") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

// Tracks the worst value of one check together with the seed that produced it.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  void update(double v, std::uint64_t s) {
    if (!(v <= value)) {  // NaN sticks
      value = v;
      seed = s;
    }
  }
  std::string detail() const { return "worst state seed " + std::to_string(seed); }
};

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void Report::add(std::string name, double value, double tolerance, std::string detail) {
  checks.push_back({std::move(name), value, tolerance, value <= tolerance, std::move(detail)});
}

void Report::add_bool(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
}

std::string Report::format() const {
  std::ostringstream out;
  out << title << '\n';
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst=" << fmt(c.value)
        << "  tol=" << fmt(c.tolerance);
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; });
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
  return out.str();
}

Report verify_operator(const SimConfig& config, int samples) {
  const VelocityGrid grid = build_grid(config.n_v, config.v_max);
  const ModelParams& params = config.params;
  const double pr_sweep[] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0, 1.5};

  Worst mass, momentum, energy, cancel, bgk;
  std::array<Worst, 5> cancel_sweep{};
  std::vector<double> S(grid.size()), M(grid.size());

  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    const auto F = random_distribution(rng, grid);
    const MacroState s = compute_macro(F, grid);
    shakhov_target(s, params.pr, grid, S);

    double m0 = 0.0, e2 = 0.0;
    Vec3 m1{};
    const auto& nodes = grid.nodes();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const Vec3 c{nodes[k][0] - s.U[0], nodes[k][1] - s.U[1], nodes[k][2] - s.U[2]};
      const double g = grid.weight(k) * S[k];
      m0 += g;
      for (int a = 0; a < 3; ++a) m1[a] += g * c[a];
      e2 += g * norm2(c);
    }
    mass.update(std::abs(m0 - s.rho), seed);
    momentum.update(std::max({std::abs(m1[0]), std::abs(m1[1]), std::abs(m1[2])}), seed);
    energy.update(std::abs(e2 - 3.0 * s.rho * s.T), seed);

    const double qn = 1.0 + std::sqrt(norm2(s.q));
    cancel.update(std::sqrt(norm2(cancellation_residual(F, params, grid))) / qn, seed);
    for (std::size_t p = 0; p < std::size(pr_sweep); ++p) {
      ModelParams sweep = params;
      sweep.pr = pr_sweep[p];
      cancel_sweep[p].update(std::sqrt(norm2(cancellation_residual(F, sweep, grid))) / qn, seed);
    }

    shakhov_target(s, 1.0, grid, S);
    maxwellian_into(s, grid, M);
    double diff = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) diff = std::max(diff, std::abs(S[k] - M[k]));
    bgk.update(diff, seed);
  }

  const NodeArray m = global_maxwellian(grid);
  DistributionField Fm(1, grid.size());
  std::copy(m.begin(), m.end(), Fm.values.begin());
  const DistributionField Sm = shakhov_apply(Fm, params, grid);
  double fixed = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) fixed = std::max(fixed, std::abs(Sm.values[k] - m[k]));

  Report r;
  r.title = "verify-operator: " + std::to_string(samples) + " states, grid " + std::to_string(config.n_v) +
            "^3, v_max " + fmt(config.v_max, "%g") + ", Pr " + fmt(params.pr, "%g") + ", seed " +
            std::to_string(config.seed);
  r.add("conservation.mass |int S - rho|", mass.value, 1e-6, mass.detail());
  r.add("conservation.momentum |int S (v-U)|", momentum.value, 1e-6, momentum.detail());
  r.add("conservation.energy |int S |v-U|^2 - 3 rho T|", energy.value, 1e-6, energy.detail());
  const std::string label = params.pr == 1.0 ? " (Pr = 1: int (M - F)(v-U)|v-U|^2 = -q)" : "";
  r.add("cancellation[Pr=" + fmt(params.pr, "%.6g") + "]" + label, cancel.value, 1e-6, cancel.detail());
  for (std::size_t p = 0; p < std::size(pr_sweep); ++p)
    r.add("cancellation.sweep[Pr=" + fmt(pr_sweep[p], "%.6g") + "]", cancel_sweep[p].value, 1e-6,
          cancel_sweep[p].detail());
  r.add("bgk_reduction max|S_1 - M| (bitwise)", bgk.value, 0.0, bgk.detail());
  r.add("equilibrium_fixed_point max|S(m) - m|", fixed, 1e-12);
  return r;
}

int kernel_dimension(double pr, const BasisSet& basis, const VelocityGrid& grid) {
  int dim = 0;
  for (const auto& e : basis.ebar)
    if (l2_norm(apply_L(e, pr, basis, grid), grid) <= 1e-10) ++dim;
  return dim;
}

CoercivitySweep coercivity_sweep(double pr, int samples, std::uint64_t seed, const BasisSet& basis,
                                 const VelocityGrid& grid) {
  CoercivitySweep out;
  out.worst_margin = -std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const auto f = random_perturbation(rng, grid, basis);
    const auto form = coercivity_form(f, pr, basis, grid);
    const double margin = pr > 0.0 ? form.lhs - form.bound : std::abs(form.lhs - form.bound);
    out.worst_margin = std::max(out.worst_margin, margin);
    if (!form.holds(pr)) ++out.failures;
  }
  return out;
}

Report verify_linear(const SimConfig& config, const LinearSampling& sampling) {
  const VelocityGrid grid = build_grid(config.n_v, config.v_max);
  const BasisSet basis = build_bases(grid);
  const ModelParams& params = config.params;
  const double pr = params.pr;

  Report r;
  r.title = "verify-linear: grid " + std::to_string(config.n_v) + "^3, v_max " + fmt(config.v_max, "%g") +
            ", Pr " + fmt(pr, "%g") + ", seed " + std::to_string(config.seed);

  r.add("orthonormality max|gram - I|", (basis.gram_ebar - Eigen::Matrix<double, 8, 8>::Identity()).cwiseAbs().maxCoeff(),
        1e-8);

  // Projection algebra.
  {
    Rng rng(config.seed);
    double idem = 0.0, cross = 0.0, pyth = 0.0;
    for (int i = 0; i < sampling.projection_samples; ++i) {
      const auto f = random_perturbation(rng, grid, basis);
      const auto pc = project(f, Projection::conservative(), basis, grid);
      const auto pnc = project(f, Projection::non_conservative(), basis, grid);
      const auto pcpc = project(pc, Projection::conservative(), basis, grid);
      const auto pncpnc = project(pnc, Projection::non_conservative(), basis, grid);
      const auto pcpnc = project(pnc, Projection::conservative(), basis, grid);
      std::vector<double> d(grid.size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = pcpc[k] - pc[k];
      idem = std::max(idem, l2_norm(d, grid));
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = pncpnc[k] - pnc[k];
      idem = std::max(idem, l2_norm(d, grid));
      cross = std::max(cross, l2_norm(pcpnc, grid));

      std::vector<double> p(grid.size()), rest(grid.size());
      for (std::size_t k = 0; k < d.size(); ++k) {
        p[k] = pc[k] + pnc[k];
        rest[k] = f[k] - p[k];
      }
      pyth = std::max(pyth, std::abs(inner(f, f, grid) - inner(p, p, grid) - inner(rest, rest, grid)));
      for (std::size_t k = 0; k < d.size(); ++k) rest[k] = f[k] - pc[k];
      pyth = std::max(pyth, std::abs(inner(f, f, grid) - inner(pc, pc, grid) - inner(rest, rest, grid)));
    }
    r.add("projection.idempotent ||P^2 f - P f||", idem, 1e-10);
    r.add("projection.orthogonal ||P_c P_nc f||", cross, 1e-10);
    r.add("projection.pythagoras", pyth, 1e-10);
  }

  // Kernel and eigenstructure of L_Pr.
  {
    const int expected = pr == 0.0 ? 8 : 5;
    const int dim = kernel_dimension(pr, basis, grid);
    r.add_bool("kernel.dimension = " + std::to_string(expected), dim == expected,
               "found " + std::to_string(dim));
    double eig = 0.0;
    for (int i = 0; i < 5; ++i) eig = std::max(eig, l2_norm(apply_L(basis.ebar[i], pr, basis, grid), grid));
    for (int i = 5; i < 8; ++i) {
      auto Le = apply_L(basis.ebar[i], pr, basis, grid);
      for (std::size_t k = 0; k < Le.size(); ++k) Le[k] += pr * basis.ebar[i][k];
      eig = std::max(eig, l2_norm(Le, grid));
    }
    Rng rng(config.seed + 1);
    for (int i = 0; i < sampling.projection_samples; ++i) {
      auto f = random_perturbation(rng, grid, basis);
      const auto p = project(f, Projection::prandtl(0.0), basis, grid);  // P_c + P_nc
      for (std::size_t k = 0; k < f.size(); ++k) f[k] -= p[k];
      auto Lf = apply_L(f, pr, basis, grid);
      for (std::size_t k = 0; k < f.size(); ++k) Lf[k] += f[k];
      eig = std::max(eig, l2_norm(Lf, grid) / l2_norm(f, grid));
    }
    r.add("eigen: L ebar_1..5 = 0, L ebar_6..8 = -Pr ebar, L f = -f on complement", eig, 1e-10);
  }

  // Coercivity.
  {
    const auto sweep = coercivity_sweep(pr, sampling.coercivity_samples, config.seed + 2, basis, grid);
    const std::string name = pr > 0.0 ? "coercivity.inequality <Lf,f> <= -min(Pr,1)||(I-P_c)f||^2"
                                      : "coercivity.identity <L_0 f,f> = -||(I-P_c-P_nc)f||^2";
    r.add(name, std::max(sweep.worst_margin, 0.0), 1e-10,
          std::to_string(sampling.coercivity_samples) + " samples, " + std::to_string(sweep.failures) +
              " failures, worst margin " + fmt(sweep.worst_margin));
  }

  // Jacobian pair.
  {
    const Matrix13 I = Matrix13::Identity();
    Rng rng(config.seed + 3);
    double worst = 0.0;
    for (int i = 0; i < sampling.jacobian_states; ++i) {
      const MacroState s = random_state(rng);
      worst = std::max(worst, (jacobian(s).entries * jacobian_inverse(s).entries - I).cwiseAbs().maxCoeff());
    }
    r.add("jacobian max|J J^-1 - I|", worst, 1e-10);

    Eigen::Matrix<double, 13, 1> diag;
    const double s10 = std::sqrt(10.0);
    diag << 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, s10, s10, s10;
    const Matrix13 expected = diag.asDiagonal();
    const double eq = (jacobian_inverse(MacroState::equilibrium()).entries - expected).cwiseAbs().maxCoeff();
    r.add("jacobian_inverse at equilibrium = diag(1,1,1,1,2,2,2,1,1,1,s10,s10,s10)", eq, 0.0);
  }

  // Gamma.
  {
    Rng rng(config.seed + 4);
    double scaling = 0.0, ortho = 0.0;
    for (int i = 0; i < sampling.gamma_samples; ++i) {
      const auto f = random_perturbation(rng, grid, basis);
      std::vector<double> ef(f.size());
      double ratios[2];
      const double eps[2] = {1e-2, 1e-3};
      for (int j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < f.size(); ++k) ef[k] = eps[j] * f[k];
        const auto g = gamma_residual(ef, params, grid, basis);
        ratios[j] = l2_norm(g, grid) / (eps[j] * eps[j]);
        for (int e = 0; e < 5; ++e) ortho = std::max(ortho, std::abs(inner(g, basis.ebar[e], grid)));
      }
      scaling = std::max(scaling, std::abs(ratios[0] - ratios[1]) / ratios[1]);
    }
    r.add("gamma.quadratic_scaling rel. change of ||Gamma(eps f)||/eps^2", scaling, 0.1);
    r.add("gamma.orthogonal |<Gamma, ebar_1..5>|", ortho, 1e-8);
  }

  // First-order consistency.
  {
    Rng rng(config.seed + 5);
    const auto f = random_perturbation(rng, grid, basis);
    std::vector<double> ef(f.size());
    const double eps[3] = {1e-2, 1e-3, 1e-4};
    double ratio[3];
    for (int j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < f.size(); ++k) ef[k] = eps[j] * f[k];
      ratio[j] = first_order_consistency(ef, params, grid, basis).ratio;
    }
    const double spread = (std::max({ratio[0], ratio[1], ratio[2]}) - std::min({ratio[0], ratio[1], ratio[2]})) /
                          std::min({ratio[0], ratio[1], ratio[2]});
    r.add("first_order.remainder ratio spread over eps = 1e-2..1e-4", spread, 0.1,
          "ratio at 1e-3: " + fmt(ratio[1]));

    double heat = 0.0;
    for (double e : eps) {
      for (std::size_t k = 0; k < f.size(); ++k) ef[k] = e * basis.ebar[5][k];
      heat = std::max(heat, first_order_consistency(ef, params, grid, basis).numerator / (e * e));
    }
    r.add("first_order.ebar_6 numerator / eps^2", heat, 1.0);

    for (std::size_t k = 0; k < f.size(); ++k) ef[k] = 1e-3 * basis.ebar[0][k];
    r.add("first_order.density numerator", first_order_consistency(ef, params, grid, basis).numerator, 1e-12);
  }
  return r;
}

RunSummary summarize_run(const SimConfig& config, const RunResult& result) {
  RunSummary s;
  const auto& rec = result.records;
  if (rec.empty()) return s;
  const auto& r0 = rec.front();
  s.min_F = r0.min_F;
  s.min_S = r0.min_S;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    const auto& r = rec[k];
    s.mass_drift = std::max(s.mass_drift, std::abs(r.mass - r0.mass) / r0.mass);
    for (int i = 0; i < 3; ++i)
      s.momentum_drift = std::max(s.momentum_drift, std::abs(r.momentum[i] - r0.momentum[i]) / r0.mass);
    s.energy_drift = std::max(s.energy_drift, std::abs(r.energy - r0.energy) / r0.energy);
    s.min_F = std::min(s.min_F, r.min_F);
    s.min_S = std::min(s.min_S, r.min_S);
    if (k > 0) {
      const double inc = r.h_value - rec[k - 1].h_value;
      s.h_worst_increase = std::max(s.h_worst_increase, inc);
      if (inc > 1e-10) s.h_monotone = false;
    }
  }
  s.heat_flux_drift = std::abs(rec.back().max_q - r0.max_q);

  const double t_start = config.n_cells > 1 ? config.domain_length : 0.0;
  std::vector<double> t, nf, tq, nq;
  for (const auto& r : rec) {
    if (r.t >= t_start && r.l2_norm_f > 1e-14) {
      t.push_back(r.t);
      nf.push_back(r.l2_norm_f);
    }
    if (r.max_q > 1e-14) {
      tq.push_back(r.t);
      nq.push_back(r.max_q);
    }
  }
  try {
    s.norm_decay = fit_decay(t, nf);
  } catch (const std::invalid_argument&) {
  }
  try {
    s.heat_flux_decay = fit_decay(tq, nq);
  } catch (const std::invalid_argument&) {
  }
  if (rec.size() >= 3) {
    double worst = 0.0;
    for (const auto& b : third_moment_balance(rec)) worst = std::max(worst, b.residual());
    s.balance_residual = worst;
  }
  return s;
}

std::string format_summary(const RunSummary& s) {
  std::ostringstream out;
  out << "conservation drift: mass " << fmt(s.mass_drift) << ", momentum " << fmt(s.momentum_drift)
      << ", energy " << fmt(s.energy_drift) << '\n';
  if (s.norm_decay)
    out << "decay of ||f||: rate " << fmt(s.norm_decay->rate, "%.6g") << ", R^2 "
        << fmt(s.norm_decay->r_squared, "%.6f") << '\n';
  else
    out << "decay of ||f||: n/a (fewer than 10 usable samples)\n";
  if (s.heat_flux_decay)
    out << "decay of max|q|: rate " << fmt(s.heat_flux_decay->rate, "%.6g") << ", R^2 "
        << fmt(s.heat_flux_decay->r_squared, "%.6f") << '\n';
  out << "heat flux drift |max|q|(end) - max|q|(0)|: " << fmt(s.heat_flux_drift) << '\n';
  out << "H-theorem: " << (s.h_monotone ? "monotone" : "NOT monotone") << " (worst increase "
      << fmt(s.h_worst_increase) << ")\n";
  out << "positivity: min F " << fmt(s.min_F) << ", min S " << fmt(s.min_S) << '\n';
  if (s.balance_residual)
    out << "third-moment balance residual: " << fmt(*s.balance_residual) << '\n';
  return out.str();
}

}  // namespace shakhov
