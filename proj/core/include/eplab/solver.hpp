#ifndef EPLAB_SOLVER_HPP
#define EPLAB_SOLVER_HPP

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "eplab/gas.hpp"
#include "eplab/grid.hpp"
#include "eplab/poisson.hpp"

namespace eplab {

struct SolverConfig {
  double cfl = 0.45;
  double t_end = 1.0;
  double snapshot_dt = 0.0;          // 0 = t_end / 200
  double blowup_gradient_cap = 0.0;  // 0 = 1e4 * max(1, initial max|u_x|)
  // Secondary detector for the pressureless collision mode, where u stays
  // bounded while the scaled slope escapes the invariant region: fires when
  // min u_x / sqrt(rho) falls below -factor * sqrt(2k) (0 = off). For A = 0
  // the quantity equals min(X, Y); sub-critical data never leaves
  // [-sqrt(2k), inf) apart from discretization error.
  double blowup_slope_factor = 0.0;
  double rho_floor = 1e-10;          // vacuum guard
  std::size_t max_steps = 50'000'000;

  // Diagnostic mask: cells with rho below diag_rho_min, or within
  // diag_x_margin of a boundary, are excluded from gradient/X/Y extrema and
  // from blow-up detection. Scenarios with a density floor set these so that
  // wall artifacts of the whole-line emulation do not register as physics.
  double diag_rho_min = 0.0;
  double diag_x_margin = 0.0;

  PoissonConfig poisson;
};

enum class Outcome { ReachedTEnd, BlowupDetected, VacuumFormed, StepLimit };

std::string to_string(Outcome o);

/// Per-snapshot diagnostic time series plus run-level flags.
struct SimulationTrace {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> max_abs_ux;
  std::vector<double> max_abs_rhox;
  std::vector<double> max_rho;
  std::vector<double> min_X, max_X, min_Y, max_Y;
  std::vector<double> sup_RS;         // sup over x of max(|R|, |S|)
  std::vector<double> apriori_bound;  // C0 + k E0 t
  std::vector<std::uint8_t> apriori_ok;

  Outcome outcome = Outcome::ReachedTEnd;
  double t_c_numeric = std::numeric_limits<double>::quiet_NaN();
  std::size_t steps = 0;
  double C0 = 0.0;  // initial sup max(|R|, |S|)
  double E0 = 0.0;  // total charge
  double gradient_cap = 0.0;
  bool domain_ok = true;   // waves stayed clear of the boundaries
  bool support_ok = true;  // initial data passed the support check
};

/// A completed run: the trace plus the retained field snapshots that
/// characteristic tracing and file output consume.
struct SimRun {
  SimulationTrace trace;
  std::vector<FlowField> snapshots;
};

/// Physical flux F(U) = (m, m^2/rho + A rho^gamma).
std::pair<double, double> physical_flux(double rho, double m, const GasModel& model);

/// One conservative local Lax-Friedrichs update with the unsplit Poisson
/// source evaluated at time level n. Reflecting ghost cells close the domain
/// with exactly zero mass flux. dt = cfl dx / max(|lambda|, |mu|), optionally
/// capped by dt_cap so callers can land on snapshot times.
FlowField step(const FlowField& state, const SolverConfig& cfg, const GasModel& model,
               double dt_cap = std::numeric_limits<double>::infinity());

/// Full time loop with snapshot diagnostics. Terminates at t_end, on
/// confirmed gradient blow-up, on vacuum formation, or at the step limit.
SimRun simulate(const FlowField& init, const SolverConfig& cfg, const GasModel& model);

}  // namespace eplab

#endif  // EPLAB_SOLVER_HPP
