#ifndef EPLAB_CHARACTERISTICS_HPP
#define EPLAB_CHARACTERISTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "eplab/gas.hpp"
#include "eplab/grid.hpp"
#include "eplab/solver.hpp"

namespace eplab {

enum class CharFamily { Lambda, Mu };

std::string to_string(CharFamily f);

enum class PathEnd { ReachedEnd, LeftDomain, BlowupVicinity, LeftSupport };

std::string to_string(PathEnd e);

struct PathPoint {
  double t = 0.0;
  double x = 0.0;
  double X = 0.0;
  double Y = 0.0;
  double rho = 0.0;
};

/// A lambda- or mu-characteristic traced through a snapshot sequence, with
/// the scaled slopes sampled at each snapshot time.
struct CharPath {
  CharFamily family = CharFamily::Lambda;
  double x0 = 0.0;
  std::vector<PathPoint> points;
  PathEnd terminated = PathEnd::ReachedEnd;
};

struct TracerConfig {
  double blowup_ux_limit = 0.0;  // stop when local |u_x| exceeds this (0 = off)
  double rho_stop = 0.0;         // stop when local rho falls below this (0 = off)
  double x_window_lo = 0.0;      // tracing window; both 0 = whole grid
  double x_window_hi = 0.0;
  double max_cells_per_interval = 50.0;  // sparse-snapshot heuristic
};

/// Integrates dx/dt = lambda (or mu) through a snapshot deck with midpoint
/// Runge-Kutta substeps and bilinear interpolation of (rho, u) in x and t.
/// Construction precomputes the per-snapshot Riemann fields once so that
/// many paths can be traced against the same run.
class CharTracer {
 public:
  CharTracer(std::span<const FlowField> snapshots, const GasModel& model,
             TracerConfig cfg = {});

  CharPath trace(double x0, CharFamily family) const;

 private:
  double speed_at(std::size_t k0, double w, double x, CharFamily family) const;

  std::vector<const FlowField*> fields_;
  std::vector<RiemannFields> riemann_;
  std::vector<std::vector<double>> ux_;
  GasModel model_;
  TracerConfig cfg_;
  Grid1D grid_;
};

/// Convenience wrapper for a single path.
CharPath trace_path(std::span<const FlowField> snapshots, const GasModel& model, double x0,
                    CharFamily family, TracerConfig cfg = {});

/// Closed-form super-solution of the scaled-slope dynamics along a
/// characteristic seeded at X0 < -sqrt(2k), given a ceiling Y1 for the
/// companion variable and the seed density rho0. Integrating
///   X' <= -(X1 / (Y1 t + 2/sqrt(rho0))) X^2,   X1 = (X0^2 - 2k)/X0^2,
/// gives
///   X(t) <= Y1 / (X1 ln(1 + sqrt(rho0) Y1 t / 2) + Y1 / X0),
/// which reaches -infinity no later than
///   t_c = (2 / (sqrt(rho0) Y1)) (exp(-Y1 / (X1 X0)) - 1).
struct RiccatiBound {
  double X0 = 0.0;
  double Y1 = 0.0;
  double X1 = 0.0;
  double rho0 = 0.0;
  double k = 0.0;
  double t_c_bound = 0.0;

  /// Value of the bounding curve at time t in [0, t_c_bound).
  double eval(double t) const;
};

RiccatiBound riccati_blowup_bound(double X0, double Y1, double rho0, const GasModel& model);

/// Ceiling for the companion variable of a blow-up candidate:
/// max{sqrt(2k), companion initial max} in the isothermal case, and
/// M0 = max{sqrt(2k), max X0, max Y0} for gamma > 1.
double riccati_ceiling(const RiemannFields& rf0, CharFamily family, const GasModel& model);

struct MonotonicityViolation {
  double t = 0.0;
  double x = 0.0;
  double value = 0.0;
  double next_value = 0.0;
};

struct MonotonicityReport {
  std::size_t pairs_checked = 0;
  std::size_t pairs_in_window = 0;
  std::vector<MonotonicityViolation> violations;

  bool ok() const { return violations.empty(); }
};

struct MonotonicityOptions {
  double guard_frac = 0.02;  // window shrinks by guard_frac * scale each side
  double tol_frac = 0.01;    // allowed counter-movement, relative to scale
};

/// Checks that the traced slope decreases through the buffer zone
/// (C+(M0) + delta, M0 - delta). X is checked on lambda paths, Y on mu paths.
MonotonicityReport verify_monotone_buffer(const CharPath& path, const GasModel& model,
                                          double M0, MonotonicityOptions opts = {});

/// Checks that the traced slope is nondecreasing inside (-K0 + delta, -delta).
MonotonicityReport verify_lower_trap(const CharPath& path, double K0,
                                     MonotonicityOptions opts = {});

}  // namespace eplab

#endif  // EPLAB_CHARACTERISTICS_HPP
