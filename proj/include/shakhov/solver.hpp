#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shakhov/grid.hpp"
#include "shakhov/linear.hpp"
#include "shakhov/model.hpp"
#include "shakhov/moments.hpp"

namespace shakhov {

enum class InitialKind {
  equilibrium,  // f0 = 0
  density,      // rho(x) = 1 + A sin(k x)
  velocity,     // U_1(x) = A sin(k x), T = 1 - U_1^2/3 (total energy of m)
  temperature,  // T(x) = 1 + A sin(k x)
  heat_flux,    // f0 = A ebar_6(v) cos(k x)
  anisotropic,  // homogeneous Theta = I + A [[1, 1/2, 0], [1/2, -1, 0], [0, 0, 0]], q_1 ~ A
};

const char* to_string(InitialKind kind);
InitialKind initial_kind_from_string(const std::string& name);  // throws std::invalid_argument

struct InitialCondition {
  InitialKind kind = InitialKind::density;
  double amplitude = 0.01;
  int mode = 1;  // spatial wavenumber in units of 2 pi / L

  bool operator==(const InitialCondition&) const = default;
};

struct SimConfig {
  ModelParams params;
  int n_v = 24;
  double v_max = 8.0;
  int n_cells = 1;
  double domain_length = 2.0 * std::numbers::pi;
  double dt = 0.01;
  double t_end = 10.0;
  int output_every = 10;
  InitialCondition ic;
  bool enforce_third_moment_zero = false;
  std::string output_path = "diagnostics.csv";
  std::uint64_t seed = 12345;

  static constexpr double kCfl = 0.9;
  static constexpr double kStabilityFraction = 0.5;

  double cell_width() const { return domain_length / n_cells; }
  long steps() const;

  /**
   * Checks the model parameters, grid preconditions and the time-step bound
   * dt <= min(cfl dx / v_max, stability_fraction tau_ref). tau_ref is tau0; the
   * per-cell relaxation time is rechecked at every step.
   * Throws ConfigError naming the violated invariant.
   */
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// Initial absolute field for the configuration.
DistributionField initial_field(const SimConfig& config, const VelocityGrid& grid,
                                const BasisSet& basis);

/**
 * First-order upwind transport along x for every velocity node on the
 * periodic interval, advanced with two-stage SSP-RK2. A single cell is a
 * no-op. Throws StabilityError when max|v_1| dt / dx > 1.
 */
DistributionField transport_step(const DistributionField& F, double dt, const VelocityGrid& grid,
                                 double dx);

/**
 * SSP-RK2 on dF/dt = (1/tau(F)) (S_Pr(F) - F), cell by cell. Throws
 * StabilityError when dt > 0.5 tau in any cell and VacuumError on vacuum.
 */
DistributionField relaxation_step(const DistributionField& F, double dt, const ModelParams& params,
                                  const VelocityGrid& grid);

/// Strang composition transport(dt/2), relaxation(dt), transport(dt/2).
DistributionField step(const DistributionField& F, double dt, const ModelParams& params,
                       const VelocityGrid& grid, double dx);

struct MicroMacroCoeffs {
  double a = 0.0;
  Vec3 b{};
  double c = 0.0;
  Vec3 d{};
};

MicroMacroCoeffs micro_macro_coeffs(std::span<const double> f, const VelocityGrid& grid,
                                    const BasisSet& basis);

/**
 * Right-hand side of the energy-flux law, integrated over x:
 *   sum_cells dx (1/tau)(-Pr q_i + 2 U_i rho T - sum_j 2 rho U_j Theta_ij).
 * The relaxation rate stays inside the spatial sum.
 */
Vec3 third_moment_source(const DistributionField& F, const ModelParams& params,
                         const VelocityGrid& grid, double dx);

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  Vec3 momentum{};
  double energy = 0.0;
  Vec3 third_moment{};
  double l2_norm_f = 0.0;
  double energy_instant = 0.0;
  double energy_production = 0.0;
  double h_value = 0.0;
  double min_F = 0.0;
  double min_S = 0.0;
  double max_drho = 0.0;
  double max_U = 0.0;
  double max_dTheta = 0.0;
  double max_q = 0.0;
  MicroMacroCoeffs coeffs;  // spatially integrated
  double max_abs_a = 0.0;
  double max_abs_b = 0.0;
  double max_abs_c = 0.0;
  double max_abs_d = 0.0;

  // Not part of the CSV: the spatially integrated third-moment source at t.
  Vec3 third_moment_source{};
};

/**
 * Energy functional truncated to first derivatives: identity, central
 * difference in x and backward difference in t.
 *   instant    = 1/2 (||f||^2 + ||D_x f||^2 + ||D_t f||^2)
 *   production = trapezoid integral over t of 2 * instant
 */
class EnergyFunctional {
 public:
  EnergyFunctional(const VelocityGrid& grid, double dx) : grid_(&grid), dx_(dx) {}

  void push(double t, const DistributionField& f);

  double instant() const { return instant_; }
  double production() const { return production_; }

 private:
  const VelocityGrid* grid_;
  double dx_;
  std::optional<double> last_t_;
  DistributionField last_f_;
  double instant_ = 0.0;
  double production_ = 0.0;
};

struct EnergyValues {
  double instant = 0.0;
  double production_integral = 0.0;
};

EnergyValues energy_functional(std::span<const double> times,
                               std::span<const DistributionField> history, const VelocityGrid& grid,
                               double dx);

/// ||f||_{L^2_{x,v}} with the cell width as the x measure.
double l2_norm_xv(const DistributionField& f, const VelocityGrid& grid, double dx);

struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
};

/**
 * Least-squares line through (t, log ||f||); rate is minus the slope.
 * Throws std::invalid_argument with fewer than 10 samples, nonpositive norms,
 * or all samples at one time.
 */
DecayFit fit_decay(std::span<const double> t, std::span<const double> norms);

struct BalanceSample {
  double t = 0.0;
  Vec3 lhs{};
  Vec3 rhs{};
  double residual() const;
};

/**
 * Centred difference of the total third moment against the source at the
 * interior records. Throws std::invalid_argument with fewer than 3 records.
 */
std::vector<BalanceSample> third_moment_balance(std::span<const DiagnosticsRecord> records);

struct SimContext {
  VelocityGrid grid;
  BasisSet basis;
  double dx;

  explicit SimContext(const SimConfig& config);
};

DiagnosticsRecord compute_diagnostics(double t, const DistributionField& F, const ModelParams& params,
                                      const SimContext& ctx, const EnergyFunctional& energy);

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  DistributionField final_state;
  std::optional<std::string> error;  // set when a step failed
  double last_good_time = 0.0;
};

/// Advances the configured problem to t_end, recording every output_every steps.
RunResult run(const SimConfig& config);
RunResult run(const SimConfig& config, DistributionField initial);

}  // namespace shakhov
