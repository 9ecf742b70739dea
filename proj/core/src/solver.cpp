#include "eplab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "eplab/errors.hpp"
#include "eplab/numerics.hpp"

namespace eplab {

namespace {

constexpr double kTimeSnapTol = 1e-12;

/// Pressure and max wave speed from one pow: with t = rho^(gamma-1),
/// c = sqrt(A gamma t) and p = A t rho.
struct CellEos {
  double p;
  double a;  // |u| + c
};

inline CellEos eos(double rho, double m, const GasModel& model) {
  const double u = m / rho;
  if (model.A == 0.0) return {0.0, std::abs(u)};
  double t;
  if (model.gamma == 1.0) {
    t = 1.0;
  } else if (model.gamma == 2.0) {
    t = rho;
  } else if (model.gamma == 3.0) {
    t = rho * rho;
  } else {
    t = std::pow(rho, model.gamma - 1.0);
  }
  const double c = std::sqrt(model.A * model.gamma * t);
  return {model.A * t * rho, std::abs(u) + c};
}

/// In-place conservative LLF update with reflecting ghost cells and the
/// unsplit Poisson source. Commits only if no cell falls below rho_floor.
class Stepper {
 public:
  Stepper(const Grid1D& grid, const SolverConfig& cfg, const GasModel& model)
      : grid_(grid), cfg_(cfg), model_(model) {
    const std::size_t n = grid.n;
    p_.resize(n);
    a_.resize(n);
    fhat_rho_.resize(n + 1);
    fhat_m_.resize(n + 1);
    rho_new_.resize(n);
    m_new_.resize(n);
  }

  double max_speed() const { return amax_; }

  /// Advances (rho, m) by min(cfl dx / amax, dt_cap); returns the dt taken.
  double advance(std::vector<double>& rho, std::vector<double>& m, double dt_cap) {
    const std::size_t n = grid_.n;
    amax_ = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(rho[i] > 0.0)) throw NonPositiveDensityError("step: rho <= 0");
      const CellEos e = eos(rho[i], m[i], model_);
      p_[i] = e.p;
      a_[i] = e.a;
      amax_ = std::max(amax_, e.a);
    }

    double dt;
    if (amax_ > 0.0) {
      dt = cfg_.cfl * grid_.dx / amax_;
      if (!std::isfinite(dt) || !(dt > 0.0))
        throw CflViolationError("step: time step underflow (max speed " +
                                std::to_string(amax_) + ")");
      if (dt >= dt_cap * (1.0 - kTimeSnapTol)) dt = dt_cap;
    } else {
      if (!std::isfinite(dt_cap))
        throw CflViolationError("step: zero wave speed and unbounded dt");
      dt = dt_cap;
    }

    // Interface fluxes, ghosts mirrored (rho, -m): zero mass flux at walls.
    auto flux_at = [&](std::size_t iface) {
      double rl, ml, pl, al, rr, mr, pr, ar;
      if (iface == 0) {
        rl = rho[0]; ml = -m[0]; pl = p_[0]; al = a_[0];
        rr = rho[0]; mr = m[0]; pr = p_[0]; ar = a_[0];
      } else if (iface == n) {
        rl = rho[n - 1]; ml = m[n - 1]; pl = p_[n - 1]; al = a_[n - 1];
        rr = rho[n - 1]; mr = -m[n - 1]; pr = p_[n - 1]; ar = a_[n - 1];
      } else {
        rl = rho[iface - 1]; ml = m[iface - 1]; pl = p_[iface - 1]; al = a_[iface - 1];
        rr = rho[iface]; mr = m[iface]; pr = p_[iface]; ar = a_[iface];
      }
      const double a = std::max(al, ar);
      const double fl_m = ml * ml / rl + pl;
      const double fr_m = mr * mr / rr + pr;
      fhat_rho_[iface] = 0.5 * (ml + mr) - 0.5 * a * (rr - rl);
      fhat_m_[iface] = 0.5 * (fl_m + fr_m) - 0.5 * a * (mr - ml);
    };
    for (std::size_t iface = 0; iface <= n; ++iface) flux_at(iface);

    // Poisson source from the time-level-n density: +k rho H (see poisson.hpp).
    std::vector<double> cum = cumulative_midpoint(rho, grid_.dx);
    const double e0 = cum.back() + 0.5 * rho.back() * grid_.dx;

    const double lam = dt / grid_.dx;
    for (std::size_t i = 0; i < n; ++i) {
      rho_new_[i] = rho[i] - lam * (fhat_rho_[i + 1] - fhat_rho_[i]);
      const double h = cum[i] - 0.5 * e0;
      m_new_[i] = m[i] - lam * (fhat_m_[i + 1] - fhat_m_[i]) + dt * model_.k * rho[i] * h;
      if (rho_new_[i] < cfg_.rho_floor)
        throw VacuumError("step: rho fell below rho_floor at x = " +
                          std::to_string(grid_.center(i)));
    }
    rho.swap(rho_new_);
    m.swap(m_new_);
    return dt;
  }

 private:
  const Grid1D& grid_;
  const SolverConfig& cfg_;
  const GasModel& model_;
  std::vector<double> p_, a_;
  std::vector<double> fhat_rho_, fhat_m_;
  std::vector<double> rho_new_, m_new_;
  double amax_ = 0.0;
};

struct DiagMask {
  std::size_t lo = 0;  // first unmasked cell
  std::size_t hi = 0;  // one past last unmasked cell
  double rho_min = 0.0;

  bool contains(std::size_t i, double rho) const {
    return i >= lo && i < hi && rho >= rho_min;
  }
};

DiagMask make_mask(const Grid1D& grid, const SolverConfig& cfg) {
  DiagMask mask;
  mask.rho_min = cfg.diag_rho_min;
  const auto margin_cells =
      static_cast<std::size_t>(std::floor(cfg.diag_x_margin / grid.dx));
  if (2 * margin_cells + 8 <= grid.n) {
    mask.lo = margin_cells;
    mask.hi = grid.n - margin_cells;
  } else {
    mask.lo = 0;
    mask.hi = grid.n;
  }
  return mask;
}

struct StepExtrema {
  double max_ux = 0.0;
  double max_rho = 0.0;
  double min_slope = 0.0;  // min u_x / sqrt(rho)
};

StepExtrema masked_extrema(const std::vector<double>& rho, const std::vector<double>& m,
                           const Grid1D& grid, const DiagMask& mask) {
  StepExtrema e;
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  for (std::size_t i = std::max<std::size_t>(mask.lo, 1); i + 1 < mask.hi; ++i) {
    if (rho[i] < mask.rho_min) continue;
    const double ux = (m[i + 1] / rho[i + 1] - m[i - 1] / rho[i - 1]) * inv2dx;
    e.max_ux = std::max(e.max_ux, std::abs(ux));
    e.max_rho = std::max(e.max_rho, rho[i]);
    e.min_slope = std::min(e.min_slope, ux / std::sqrt(rho[i]));
  }
  return e;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::ReachedTEnd: return "ReachedTEnd";
    case Outcome::BlowupDetected: return "BlowupDetected";
    case Outcome::VacuumFormed: return "VacuumFormed";
    case Outcome::StepLimit: return "StepLimit";
  }
  return "ReachedTEnd";
}

std::pair<double, double> physical_flux(double rho, double m, const GasModel& model) {
  if (!(rho > 0.0)) throw NonPositiveDensityError("physical_flux: rho <= 0");
  const double pressure = model.A == 0.0 ? 0.0 : model.A * std::pow(rho, model.gamma);
  return {m, m * m / rho + pressure};
}

FlowField step(const FlowField& state, const SolverConfig& cfg, const GasModel& model,
               double dt_cap) {
  std::vector<double> rho = state.rho;
  std::vector<double> m(state.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rho[i] * state.u[i];

  Stepper stepper(state.grid, cfg, model);
  const double dt = stepper.advance(rho, m, dt_cap);

  std::vector<double> u(rho.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = m[i] / rho[i];
  return FlowField(state.grid, std::move(rho), std::move(u), state.t + dt);
}

SimRun simulate(const FlowField& init, const SolverConfig& cfg, const GasModel& model) {
  SimRun run;
  SimulationTrace& trace = run.trace;
  const Grid1D& grid = init.grid;
  const std::size_t n = grid.n;
  const double snapshot_dt = cfg.snapshot_dt > 0.0 ? cfg.snapshot_dt : cfg.t_end / 200.0;
  const DiagMask mask = make_mask(grid, cfg);

  std::vector<double> rho = init.rho;
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = rho[i] * init.u[i];

  {
    const PoissonField pf0 = field_from_density(init, cfg.poisson);
    trace.E0 = pf0.E0;
    trace.support_ok = pf0.support_ok;
  }
  {
    const RiemannFields rf0 = to_riemann(init, model);
    double c0 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      c0 = std::max(c0, std::max(std::abs(rf0.R[i]), std::abs(rf0.S[i])));
    trace.C0 = c0;
  }

  const StepExtrema ex0 = masked_extrema(rho, m, grid, mask);
  trace.gradient_cap = cfg.blowup_gradient_cap > 0.0 ? cfg.blowup_gradient_cap
                                                     : 1e4 * std::max(1.0, ex0.max_ux);
  const double sqrt2k = std::sqrt(2.0 * model.k);
  const double slope_cap =
      cfg.blowup_slope_factor > 0.0 ? cfg.blowup_slope_factor * sqrt2k : 0.0;

  Stepper stepper(grid, cfg, model);
  struct HistEntry {
    double t;
    StepExtrema e;
  };
  std::deque<HistEntry> history;
  double t = init.t;
  const double t_final = init.t + cfg.t_end;

  auto current_field = [&](double time) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = m[i] / rho[i];
    return FlowField(grid, rho, std::move(u), time);
  };

  // Records diagnostics for the current state; returns false once the
  // blow-up heuristic confirms and the run should stop.
  auto record_snapshot = [&](double time) {
    FlowField f = current_field(time);
    const RiemannFields rf = to_riemann(f, model);

    trace.times.push_back(time);
    trace.mass.push_back(integrate(rho, grid.dx));

    double mux = 0.0, mrx = 0.0, mrho = 0.0;
    double minX = std::numeric_limits<double>::infinity(), maxX = -minX;
    double minY = minX, maxY = maxX;
    const std::vector<double> rhox = derivative(rho, grid.dx);
    const std::vector<double> ux = derivative(f.u, grid.dx);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!mask.contains(i, rho[i])) continue;
      any = true;
      mux = std::max(mux, std::abs(ux[i]));
      mrx = std::max(mrx, std::abs(rhox[i]));
      mrho = std::max(mrho, rho[i]);
      minX = std::min(minX, rf.X[i]);
      maxX = std::max(maxX, rf.X[i]);
      minY = std::min(minY, rf.Y[i]);
      maxY = std::max(maxY, rf.Y[i]);
    }
    if (!any) { minX = maxX = minY = maxY = 0.0; }
    trace.max_abs_ux.push_back(mux);
    trace.max_abs_rhox.push_back(mrx);
    trace.max_rho.push_back(mrho);
    trace.min_X.push_back(minX);
    trace.max_X.push_back(maxX);
    trace.min_Y.push_back(minY);
    trace.max_Y.push_back(maxY);

    double sup_rs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sup_rs = std::max(sup_rs, std::max(std::abs(rf.R[i]), std::abs(rf.S[i])));
    const double bound = trace.C0 + model.k * trace.E0 * (time - init.t);
    trace.sup_RS.push_back(sup_rs);
    trace.apriori_bound.push_back(bound);
    trace.apriori_ok.push_back(sup_rs <= bound * 1.05 + 1e-12 ? 1 : 0);

    run.snapshots.push_back(std::move(f));

    // Blow-up heuristic: a threshold exceeded now and already at half a
    // snapshot interval earlier with a sustained value. The gradient cap
    // catches shock formation; the scaled-slope cap catches the
    // pressureless collision mode where min(X, Y) escapes the invariant
    // region while u stays bounded.
    if (time > init.t) {
      const double t_back = time - 0.5 * snapshot_dt;
      const StepExtrema* earlier = nullptr;
      for (auto it = history.rbegin(); it != history.rend(); ++it) {
        if (it->t <= t_back) { earlier = &it->e; break; }
      }
      double mslope = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!mask.contains(i, rho[i])) continue;
        mslope = std::min(mslope, ux[i] / std::sqrt(rho[i]));
      }
      const bool ux_fires =
          mux > trace.gradient_cap && earlier && earlier->max_ux >= 0.5 * trace.gradient_cap;
      const bool slope_fires = slope_cap > 0.0 && mslope < -slope_cap && earlier &&
                               earlier->min_slope <= -0.5 * (sqrt2k + slope_cap);
      if (ux_fires || slope_fires) {
        trace.outcome = Outcome::BlowupDetected;
        trace.t_c_numeric = time;
        return false;
      }
    }
    return true;
  };

  if (!record_snapshot(t)) return run;

  // Wall influence fronts: the boundary closure is an emulation artifact, so
  // the run is whole-line faithful only while the walls' numerical domain of
  // influence stays outside the diagnostic window. Fronts move at u +- c
  // sampled at the front; influence cannot recede.
  double front_l = grid.x_min;
  double front_r = grid.x_max;
  const double window_l = grid.center(mask.lo) - 0.5 * grid.dx;
  const double window_r = grid.center(mask.hi - 1) + 0.5 * grid.dx;
  double t_prev_snap = t;
  auto update_fronts = [&](double time) {
    const double dt_snap = time - t_prev_snap;
    t_prev_snap = time;
    if (dt_snap <= 0.0) return;
    const FlowField& f = run.snapshots.back();
    const double rho_l = interp_cell_centered(f.rho, grid.x_min, grid.dx, front_l);
    const double u_l = interp_cell_centered(f.u, grid.x_min, grid.dx, front_l);
    front_l += dt_snap * std::max(0.0, u_l + sound_speed(std::max(rho_l, 1e-300), model));
    const double rho_r = interp_cell_centered(f.rho, grid.x_min, grid.dx, front_r);
    const double u_r = interp_cell_centered(f.u, grid.x_min, grid.dx, front_r);
    front_r += dt_snap * std::min(0.0, u_r - sound_speed(std::max(rho_r, 1e-300), model));
    if (front_l > window_l || front_r < window_r) trace.domain_ok = false;
  };

  double next_snap = std::min(t + snapshot_dt, t_final);
  while (true) {
    if (t >= t_final - kTimeSnapTol * cfg.t_end) {
      trace.outcome = Outcome::ReachedTEnd;
      break;
    }
    if (trace.steps >= cfg.max_steps) {
      trace.outcome = Outcome::StepLimit;
      if (t > trace.times.back()) record_snapshot(t);
      break;
    }
    double dt;
    try {
      dt = stepper.advance(rho, m, next_snap - t);
    } catch (const VacuumError&) {
      trace.outcome = Outcome::VacuumFormed;
      if (t > trace.times.back()) record_snapshot(t);
      break;
    }
    ++trace.steps;
    t = (t + dt >= next_snap - kTimeSnapTol * cfg.t_end) ? next_snap : t + dt;

    history.push_back({t, masked_extrema(rho, m, grid, mask)});
    while (history.size() > 2 && history[1].t <= t - 0.75 * snapshot_dt)
      history.pop_front();

    if (t >= next_snap - kTimeSnapTol * cfg.t_end) {
      if (!record_snapshot(t)) break;
      update_fronts(t);
      next_snap = std::min(next_snap + snapshot_dt, t_final);
    }
  }
  return run;
}

}  // namespace eplab
