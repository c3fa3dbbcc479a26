#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shakhov/grid.hpp"
#include "shakhov/linear.hpp"
#include "shakhov/solver.hpp"

namespace shakhov {

struct CheckResult {
  std::string name;
  double value = 0.0;  // worst residual observed
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;  // e.g. the seed of the worst state
};

struct Report {
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const;
  // One line per check: PASS/FAIL, name, worst value, tolerance, detail.
  std::string format() const;
  void add(std::string name, double value, double tolerance, std::string detail = {});
  void add_bool(std::string name, bool ok, std::string detail = {});
};

/**
 * Operator identities on `samples` random near-equilibrium states. State i
 * is drawn from an mt19937_64 seeded with seed + i. Checks: conservation of
 * mass, momentum and energy by S_Pr, cancellation at the configured Pr and
 * at Pr in {0, 1/3, 2/3, 1, 1.5}, BGK reduction at Pr = 1 (bitwise), and the
 * equilibrium fixed point.
 */
Report verify_operator(const SimConfig& config, int samples = 100);

struct LinearSampling {
  int projection_samples = 50;
  int coercivity_samples = 1000;
  int jacobian_states = 100;
  int gamma_samples = 20;
};

/**
 * Linearization checks at the configured Pr: orthonormality, projection
 * algebra, kernel and eigenvalues of L_Pr, coercivity (inequality for Pr > 0,
 * identity at Pr = 0), J J^{-1} = I, Gamma scaling and orthogonality,
 * first-order consistency.
 */
Report verify_linear(const SimConfig& config, const LinearSampling& sampling = {});

/// Number of ebar_i annihilated by L_Pr (to 1e-10 in norm).
int kernel_dimension(double pr, const BasisSet& basis, const VelocityGrid& grid);

/// Worst-case coercivity margin over random samples (<= 0 means the contract holds).
struct CoercivitySweep {
  double worst_margin = 0.0;  // max(lhs - bound) for Pr > 0, max|lhs - bound| at Pr = 0
  int failures = 0;
};
CoercivitySweep coercivity_sweep(double pr, int samples, std::uint64_t seed, const BasisSet& basis,
                                 const VelocityGrid& grid);

struct RunSummary {
  double mass_drift = 0.0;      // |M(t) - M(0)| / M(0), worst over records
  double momentum_drift = 0.0;  // |P(t) - P(0)| / M(0)
  double energy_drift = 0.0;    // |E(t) - E(0)| / E(0)
  std::optional<DecayFit> norm_decay;  // ||f|| fit, window after one transport period
  std::optional<DecayFit> heat_flux_decay;
  double heat_flux_drift = 0.0;  // |max|q|(end) - max|q|(0)|
  bool h_monotone = true;        // H(t_{k+1}) <= H(t_k) + 1e-10
  double h_worst_increase = 0.0;
  double min_F = 0.0;
  double min_S = 0.0;
  std::optional<double> balance_residual;  // worst centred third-moment balance residual
};

RunSummary summarize_run(const SimConfig& config, const RunResult& result);
std::string format_summary(const RunSummary& summary);

}  // namespace shakhov
