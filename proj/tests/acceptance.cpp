// Acceptance run: one PASS/FAIL line per criterion, indented detail below it.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shakhov/linear.hpp"
#include "shakhov/model.hpp"
#include "shakhov/sampling.hpp"
#include "shakhov/solver.hpp"
#include "shakhov/verify.hpp"

using namespace shakhov;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void need(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string(ok ? "    ok    " : "    FAIL  ") + buf);
    pass = pass && ok;
  }
  void note(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    lines.push_back(std::string("          ") + buf);
  }
};

int failures = 0;
std::set<int> selected;  // empty: run every criterion

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  if (!selected.empty() && !selected.count(id)) return;
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.need(false, "exception: %s", e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0.0) out.need(secs <= limit_s, "runtime %.1f s <= %.0f s", secs, limit_s);
  std::printf("%s criterion %d: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, title, secs);
  for (const auto& l : out.lines) std::printf("%s\n", l.c_str());
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

void report_into(const Report& r, Outcome& out) {
  for (const auto& c : r.checks)
    out.need(c.passed, "%s: %.3e <= %.1e %s", c.name.c_str(), c.value, c.tolerance, c.detail.c_str());
}

// Advances F with the Strang step and calls visit(t, F) after each step.
void advance(DistributionField& F, const SimConfig& c, const SimContext& ctx,
             const std::function<void(double, const DistributionField&)>& visit) {
  const long n = c.steps();
  for (long k = 1; k <= n; ++k) {
    F = step(F, c.dt, c.params, ctx.grid, ctx.dx);
    visit(k * c.dt, F);
  }
}

double rel(double a, double b, double scale) { return std::abs(a - b) / scale; }

}  // namespace

// Usage: acceptance [criterion ids...]
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  std::printf("shakhov acceptance\n");

  criterion(1, "operator identities on 100 random states, grid 24^3, v_max 8", 60.0, [](Outcome& out) {
    SimConfig c;
    report_into(verify_operator(c, 100), out);
  });

  criterion(2, "linearization: Gram, kernels, coercivity dichotomy, Jacobian pair", 0.0, [](Outcome& out) {
    const VelocityGrid grid = build_grid(24, 8.0);
    const BasisSet basis = build_bases(grid);
    const double gram = (basis.gram_ebar - Eigen::Matrix<double, 8, 8>::Identity()).cwiseAbs().maxCoeff();
    out.need(gram <= 1e-8, "max|Gram - I_8| = %.3e <= 1e-8", gram);

    const double prs[] = {0.0, 0.1, 2.0 / 3.0, 1.0, 1.5};
    for (double pr : prs) {
      const int dim = kernel_dimension(pr, basis, grid);
      const int want = pr == 0.0 ? 8 : 5;
      out.need(dim == want, "kernel dimension at Pr = %.4g: %d (expected %d)", pr, dim, want);
    }
    for (double pr : prs) {
      const auto s = coercivity_sweep(pr, 1000, 1000 + static_cast<std::uint64_t>(pr * 1000), basis, grid);
      if (pr > 0.0)
        out.need(s.failures == 0, "Pr = %.4g: <Lf,f> <= -min(Pr,1)||(I-P_c)f||^2 on 1000 samples, %d failures, worst lhs - bound %.3e",
                 pr, s.failures, s.worst_margin);
      else
        out.need(s.failures == 0 && s.worst_margin <= 1e-10,
                 "Pr = 0: |<L_0 f,f> + ||(I-P_c-P_nc)f||^2| = %.3e <= 1e-10 on 1000 samples", s.worst_margin);
    }

    Rng rng(2025);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const MacroState s = random_state(rng);
      worst = std::max(worst, (jacobian(s).entries * jacobian_inverse(s).entries - Matrix13::Identity()).cwiseAbs().maxCoeff());
    }
    out.need(worst <= 1e-10, "max|J J^-1 - I| over 100 random states = %.3e <= 1e-10", worst);
    Eigen::Matrix<double, 13, 1> d;
    const double s10 = std::sqrt(10.0);
    d << 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, s10, s10, s10;
    const bool exact = jacobian_inverse(MacroState::equilibrium()).entries == Matrix13(d.asDiagonal());
    out.need(exact, "%s", "J^-1 at equilibrium == diag(1,1,1,1,2,2,2,1,1,1,sqrt10,sqrt10,sqrt10) exactly");
  });

  criterion(3, "Gamma residual: quadratic scaling and orthogonality to the conserved span", 0.0, [](Outcome& out) {
    const VelocityGrid grid = build_grid(24, 8.0);
    const BasisSet basis = build_bases(grid);
    const ModelParams params;
    Rng rng(303);
    double spread = 0.0, ortho = 0.0;
    std::vector<double> ef(grid.size());
    for (int i = 0; i < 20; ++i) {
      const auto f = random_perturbation(rng, grid, basis);
      double ratio[2];
      const double eps[2] = {1e-2, 1e-3};
      for (int j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < ef.size(); ++k) ef[k] = eps[j] * f[k];
        const auto g = gamma_residual(ef, params, grid, basis);
        ratio[j] = l2_norm(g, grid) / (eps[j] * eps[j]);
        for (int e = 0; e < 5; ++e) ortho = std::max(ortho, std::abs(inner(g, basis.ebar[e], grid)));
      }
      spread = std::max(spread, std::abs(ratio[0] - ratio[1]) / ratio[1]);
    }
    out.need(spread <= 0.1, "max relative change of ||Gamma(eps f)||/eps^2, eps 1e-2 -> 1e-3, 20 samples: %.3e <= 0.1", spread);
    out.need(ortho <= 1e-8, "max |<Gamma, ebar_i>|, i <= 5: %.3e <= 1e-8", ortho);
  });

  criterion(4, "homogeneous relaxation against the exact moment ODEs", 60.0, [](Outcome& out) {
    for (double pr : {2.0 / 3.0, 1.5}) {
      SimConfig c;
      c.params.pr = pr;
      c.ic = {InitialKind::anisotropic, 0.05, 1};
      const SimContext ctx(c);
      DistributionField F = initial_field(c, ctx.grid, ctx.basis);
      const MacroState s0 = compute_macro(F, ctx.grid, 0);
      const double tau = 1.0 / relaxation_rate(s0, c.params);
      c.dt = tau / 1000.0;
      c.t_end = tau;
      advance(F, c, ctx, [](double, const DistributionField&) {});
      const MacroState s1 = compute_macro(F, ctx.grid, 0);
      const double decay = std::exp(-1.0);
      double worst = 0.0;
      for (int i = 0; i < 6; ++i) {
        const double eq = i < 3 ? s0.T : 0.0;
        const double dev0 = s0.Theta[i] - eq;
        if (std::abs(dev0) < 1e-6) continue;
        worst = std::max(worst, rel(s1.Theta[i] - eq, dev0 * decay, std::abs(dev0)));
      }
      out.need(worst <= 1e-4, "Pr = %.4g: Theta_ij(tau) vs T d_ij + (Theta_ij(0) - T d_ij) e^-1, worst rel. %.3e <= 1e-4", pr,
               worst);
      const double qe = rel(s1.q[0], s0.q[0] * std::exp(-pr), std::abs(s0.q[0]));
      out.need(qe <= 1e-4, "Pr = %.4g: q_1(tau) vs q_1(0) e^-Pr, rel. %.3e <= 1e-4", pr, qe);
    }
    for (InitialKind kind : {InitialKind::heat_flux, InitialKind::anisotropic}) {
      SimConfig c;
      c.params.pr = 0.0;
      c.ic = {kind, kind == InitialKind::heat_flux ? 0.01 : 0.05, 1};
      const SimContext ctx(c);
      DistributionField F = initial_field(c, ctx.grid, ctx.basis);
      const MacroState s0 = compute_macro(F, ctx.grid, 0);
      const RawMoments r0 = raw_moments(F.cell(0), ctx.grid);
      const double tau = 1.0 / relaxation_rate(s0, c.params);
      c.dt = tau / 1000.0;
      c.t_end = 10.0 * tau;
      double dq = 0.0, dm3 = 0.0;
      advance(F, c, ctx, [&](double, const DistributionField& G) {
        const MacroState s = compute_macro(G, ctx.grid, 0);
        const RawMoments r = raw_moments(G.cell(0), ctx.grid);
        for (int i = 0; i < 3; ++i) {
          dq = std::max(dq, std::abs(s.q[i] - s0.q[i]));
          dm3 = std::max(dm3, std::abs(r.m3[i] - r0.m3[i]));
        }
      });
      out.need(dq <= 1e-6 && dm3 <= 1e-6, "Pr = 0, %s seed (|q(0)| = %.3g): drift over 10 tau of q %.3e, of int F v|v|^2 %.3e <= 1e-6",
               to_string(kind), std::sqrt(norm2(s0.q)), dq, dm3);
    }
  });

  criterion(5, "conservation over 10^4 Strang steps, 64 cells x 24^3 nodes", 600.0, [](Outcome& out) {
    SimConfig c;
    c.n_cells = 64;
    c.dt = 0.01;
    c.t_end = 100.0;
    c.output_every = 1000;
    c.ic = {InitialKind::density, 0.01, 1};
    const RunResult r = run(c);
    out.need(!r.error, "run completed%s%s", r.error ? ": " : "", r.error ? r.error->c_str() : "");
    out.need(r.records.size() == 11 && std::abs(r.records.back().t - 100.0) < 1e-9, "10^4 steps to t = %.6g",
             r.records.back().t);
    const auto& a = r.records.front();
    double dm = 0.0, dp = 0.0, de = 0.0;
    for (const auto& b : r.records) {
      dm = std::max(dm, std::abs(b.mass - a.mass) / a.mass);
      for (int i = 0; i < 3; ++i) dp = std::max(dp, std::abs(b.momentum[i] - a.momentum[i]) / a.mass);
      de = std::max(de, std::abs(b.energy - a.energy) / a.energy);
    }
    out.need(dm <= 1e-8, "mass relative drift %.3e <= 1e-8", dm);
    out.need(dp <= 1e-8, "momentum drift / mass %.3e <= 1e-8", dp);
    out.need(de <= 1e-8, "energy relative drift %.3e <= 1e-8", de);
  });

  criterion(6, "decay and L2 stability", 0.0, [](Outcome& out) {
    {
      SimConfig c;
      c.n_cells = 64;
      c.dt = 0.01;
      c.t_end = 30.0;
      c.output_every = 50;
      c.ic = {InitialKind::density, 0.01, 1};
      const RunResult r = run(c);
      const RunSummary s = summarize_run(c, r);
      out.need(!r.error && s.norm_decay.has_value(), "%s", "1D density wave run completed with a decay fit");
      if (s.norm_decay) {
        out.need(s.norm_decay->rate > 0.0 && s.norm_decay->r_squared >= 0.99,
                 "1D amplitude 1e-2: ||f|| fit over t >= L: rate %.4f > 0, R^2 %.5f >= 0.99", s.norm_decay->rate,
                 s.norm_decay->r_squared);
      }
    }
    for (double pr : {1.0, 0.0}) {
      SimConfig c;
      c.params.pr = pr;
      c.t_end = 10.0;
      c.output_every = 10;
      c.ic = {InitialKind::heat_flux, 0.01, 1};
      const RunResult r = run(c);
      const RunSummary s = summarize_run(c, r);
      out.need(!r.error && s.norm_decay.has_value(), "Pr = %g ebar_6 run completed with a decay fit", pr);
      if (!s.norm_decay) continue;
      if (pr == 1.0)
        out.need(std::abs(s.norm_decay->rate - 1.0 / c.params.tau0) <= 0.05 / c.params.tau0,
                 "Pr = 1: fitted rate %.6f within 5%% of 1/tau0 = %.6f", s.norm_decay->rate, 1.0 / c.params.tau0);
      else
        out.need(std::abs(s.norm_decay->rate) <= 1e-3, "Pr = 0: |fitted rate| %.3e <= 1e-3", std::abs(s.norm_decay->rate));
    }
    {
      SimConfig c;
      c.n_cells = 32;
      c.dt = 0.02;
      c.t_end = 10.0;  // 10 tau0 at rho = T = 1
      c.ic = {InitialKind::density, 0.01, 1};
      const SimContext ctx(c);
      DistributionField F = initial_field(c, ctx.grid, ctx.basis);
      DistributionField G = F;
      Rng rng(606);
      DistributionField delta(F.n_cells, F.n_nodes, FieldKind::perturbation);
      for (std::size_t cell = 0; cell < F.n_cells; ++cell) {
        const auto d = random_perturbation(rng, ctx.grid, ctx.basis);
        std::copy(d.begin(), d.end(), delta.cell(cell).begin());
      }
      const double scale = 1e-3 / l2_norm_xv(delta, ctx.grid, ctx.dx);
      for (std::size_t i = 0; i < G.values.size(); ++i)
        G.values[i] += ctx.basis.sqrt_m[i % F.n_nodes] * scale * delta.values[i];
      auto diff = [&](const DistributionField& a, const DistributionField& b) {
        DistributionField d(a.n_cells, a.n_nodes, FieldKind::perturbation);
        for (std::size_t i = 0; i < d.values.size(); ++i)
          d.values[i] = (a.values[i] - b.values[i]) / ctx.basis.sqrt_m[i % a.n_nodes];
        return l2_norm_xv(d, ctx.grid, ctx.dx);
      };
      const double d0 = diff(F, G);
      double worst = 1.0;
      for (long k = 1; k <= c.steps(); ++k) {
        F = step(F, c.dt, c.params, ctx.grid, ctx.dx);
        G = step(G, c.dt, c.params, ctx.grid, ctx.dx);
        worst = std::max(worst, diff(F, G) / d0);
      }
      out.note("twin runs: ||f0 - fbar0|| = %.3e, final ratio %.3e", d0, diff(F, G) / d0);
      out.need(worst <= 10.0, "twin-run ratio max_t ||f - fbar||(t)/||f0 - fbar0|| over [0, 10 tau] = %.4f <= 10", worst);
    }
  });

  criterion(7, "H-theorem and positivity on amplitude-1e-2 runs", 0.0, [](Outcome& out) {
    struct Case {
      const char* name;
      SimConfig c;
    };
    std::vector<Case> cases;
    auto add = [&](const char* name, double pr, int cells, double dt, double t_end, InitialKind kind) {
      SimConfig c;
      c.params.pr = pr;
      c.n_cells = cells;
      c.dt = dt;
      c.t_end = t_end;
      c.output_every = cells > 1 ? 10 : 5;
      c.ic = {kind, 0.01, 1};
      cases.push_back({name, c});
    };
    add("1D density, Pr 2/3", 2.0 / 3.0, 32, 0.02, 10.0, InitialKind::density);
    add("1D temperature, Pr 0", 0.0, 32, 0.02, 10.0, InitialKind::temperature);
    add("1D heat flux, Pr 1.5", 1.5, 32, 0.02, 10.0, InitialKind::heat_flux);
    add("homogeneous anisotropic, Pr 2/3", 2.0 / 3.0, 1, 0.01, 10.0, InitialKind::anisotropic);
    add("homogeneous heat flux, Pr 1", 1.0, 1, 0.01, 10.0, InitialKind::heat_flux);
    for (const auto& k : cases) {
      const RunResult r = run(k.c);
      const RunSummary s = summarize_run(k.c, r);
      out.need(!r.error, "%s: run completed", k.name);
      out.need(s.h_monotone, "%s: H(t_k+1) <= H(t_k) + 1e-10 at %zu outputs, worst increase %.3e", k.name, r.records.size(),
               s.h_worst_increase);
      out.need(s.min_F >= -1e-12 && s.min_S >= -1e-12, "%s: min F %.3e, min S %.3e >= -1e-12", k.name, s.min_F, s.min_S);
    }
  });

  criterion(8, "third-moment balance converges at second order in dt", 0.0, [](Outcome& out) {
    // seed_q adds a uniform sqrt(m) ebar_6 component to every cell.
    auto residual_at = [](SimConfig c, double t_probe, double seed_q) {
      c.output_every = 1;
      c.t_end = t_probe + 2.0 * c.dt;
      const SimContext ctx(c);
      DistributionField F = initial_field(c, ctx.grid, ctx.basis);
      for (std::size_t i = 0; i < F.values.size(); ++i) {
        const std::size_t k = i % F.n_nodes;
        F.values[i] += seed_q * ctx.basis.sqrt_m[k] * ctx.basis.ebar[5][k];
      }
      const RunResult r = run(c, std::move(F));
      if (r.error) throw std::runtime_error(*r.error);
      for (const auto& b : third_moment_balance(r.records))
        if (std::abs(b.t - t_probe) < 1e-9) return b.residual();
      throw std::runtime_error("probe time not sampled");
    };
    struct Setup {
      const char* name;
      SimConfig c;
      double seed_q = 0.0;
    };
    std::vector<Setup> setups;
    {
      SimConfig c;
      c.ic = {InitialKind::anisotropic, 0.05, 1};
      c.dt = 0.04;
      setups.push_back({"homogeneous anisotropic, Pr 2/3", c});
    }
    {
      SimConfig c;
      c.n_cells = 16;
      c.dt = 0.04;
      c.ic = {InitialKind::density, 0.2, 1};
      setups.push_back({"1D density wave + uniform heat flux, Pr 2/3, 16 cells", c, 0.05});
    }
    for (auto& s : setups) {
      double res[3];
      for (int i = 0; i < 3; ++i) {
        SimConfig c = s.c;
        c.dt = s.c.dt / std::pow(2.0, i);
        res[i] = residual_at(c, 0.8, s.seed_q);
      }
      const double p1 = std::log2(res[0] / res[1]), p2 = std::log2(res[1] / res[2]);
      out.note("%s: residual at t = 0.8 for dt, dt/2, dt/4 = %.3e, %.3e, %.3e", s.name, res[0], res[1], res[2]);
      out.need(p1 >= 1.8 && p2 >= 1.8, "%s: measured orders %.3f, %.3f >= 1.8", s.name, p1, p2);
    }
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
