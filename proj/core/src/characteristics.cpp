#include "eplab/characteristics.hpp"

#include <algorithm>
#include <cmath>

#include "eplab/errors.hpp"
#include "eplab/numerics.hpp"
#include "eplab/threshold.hpp"

namespace eplab {

std::string to_string(CharFamily f) { return f == CharFamily::Lambda ? "lambda" : "mu"; }

std::string to_string(PathEnd e) {
  switch (e) {
    case PathEnd::ReachedEnd: return "reached_end";
    case PathEnd::LeftDomain: return "left_domain";
    case PathEnd::BlowupVicinity: return "blowup_vicinity";
    case PathEnd::LeftSupport: return "left_support";
  }
  return "reached_end";
}

CharTracer::CharTracer(std::span<const FlowField> snapshots, const GasModel& model,
                       TracerConfig cfg)
    : model_(model), cfg_(cfg) {
  if (snapshots.size() < 2)
    throw SnapshotsTooSparseError("CharTracer: need at least two snapshots");
  grid_ = snapshots.front().grid;

  fields_.reserve(snapshots.size());
  riemann_.reserve(snapshots.size());
  ux_.reserve(snapshots.size());
  double vmax = 0.0, dt_max = 0.0;
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const FlowField& f = snapshots[k];
    if (!(f.grid == grid_))
      throw UnsupportedParametersError("CharTracer: snapshots must share one grid");
    if (k > 0) {
      const double dt = f.t - snapshots[k - 1].t;
      if (!(dt > 0.0))
        throw UnsupportedParametersError("CharTracer: snapshot times must increase");
      dt_max = std::max(dt_max, dt);
    }
    fields_.push_back(&f);
    riemann_.push_back(to_riemann(f, model));
    ux_.push_back(derivative(f.u, grid_.dx));
    const RiemannFields& rf = riemann_.back();
    for (std::size_t i = 0; i < grid_.n; ++i)
      vmax = std::max(vmax, std::max(std::abs(rf.lambda[i]), std::abs(rf.mu[i])));
  }
  if (dt_max * vmax > cfg_.max_cells_per_interval * grid_.dx)
    throw SnapshotsTooSparseError("CharTracer: snapshot spacing " + std::to_string(dt_max) +
                                  " too coarse for reliable tracing");
}

double CharTracer::speed_at(std::size_t k0, double w, double x, CharFamily family) const {
  auto sample = [&](std::size_t k) {
    const FlowField& f = *fields_[k];
    const double rho = interp_cell_centered(f.rho, grid_.x_min, grid_.dx, x);
    const double u = interp_cell_centered(f.u, grid_.x_min, grid_.dx, x);
    const double c = sound_speed(std::max(rho, 1e-300), model_);
    return family == CharFamily::Lambda ? u - c : u + c;
  };
  const double v0 = sample(k0);
  if (w == 0.0) return v0;
  return v0 * (1.0 - w) + sample(k0 + 1) * w;
}

CharPath CharTracer::trace(double x0, CharFamily family) const {
  CharPath path;
  path.family = family;
  path.x0 = x0;

  double x_lo = grid_.x_min + grid_.dx;
  double x_hi = grid_.x_max - grid_.dx;
  if (cfg_.x_window_lo != 0.0 || cfg_.x_window_hi != 0.0) {
    x_lo = std::max(x_lo, cfg_.x_window_lo);
    x_hi = std::min(x_hi, cfg_.x_window_hi);
  }
  double x = x0;

  auto sample_point = [&](std::size_t k, double xs) {
    PathPoint p;
    p.t = fields_[k]->t;
    p.x = xs;
    p.X = interp_cell_centered(riemann_[k].X, grid_.x_min, grid_.dx, xs);
    p.Y = interp_cell_centered(riemann_[k].Y, grid_.x_min, grid_.dx, xs);
    p.rho = interp_cell_centered(fields_[k]->rho, grid_.x_min, grid_.dx, xs);
    return p;
  };

  auto stop_here = [&](std::size_t k, double xs) -> bool {
    if (cfg_.rho_stop > 0.0 &&
        interp_cell_centered(fields_[k]->rho, grid_.x_min, grid_.dx, xs) < cfg_.rho_stop) {
      path.terminated = PathEnd::LeftSupport;
      return true;
    }
    if (cfg_.blowup_ux_limit > 0.0 &&
        std::abs(interp_cell_centered(ux_[k], grid_.x_min, grid_.dx, xs)) >
            cfg_.blowup_ux_limit) {
      path.terminated = PathEnd::BlowupVicinity;
      return true;
    }
    return false;
  };

  if (x < x_lo || x > x_hi) {
    path.terminated = PathEnd::LeftDomain;
    return path;
  }
  if (stop_here(0, x)) return path;
  path.points.push_back(sample_point(0, x));

  for (std::size_t k = 0; k + 1 < fields_.size(); ++k) {
    const double dt_k = fields_[k + 1]->t - fields_[k]->t;
    const double v_here = std::abs(speed_at(k, 0.0, x, family));
    const auto substeps = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(dt_k * std::max(v_here, 1.0) / (0.5 * grid_.dx))));
    const double h = dt_k / static_cast<double>(substeps);

    bool left = false;
    for (std::size_t s = 0; s < substeps; ++s) {
      const double w0 = static_cast<double>(s) / static_cast<double>(substeps);
      const double wm = (static_cast<double>(s) + 0.5) / static_cast<double>(substeps);
      const double xm = x + 0.5 * h * speed_at(k, w0, x, family);
      x += h * speed_at(k, wm, std::clamp(xm, x_lo, x_hi), family);
      if (x < x_lo || x > x_hi) {
        left = true;
        break;
      }
    }
    if (left) {
      path.terminated = PathEnd::LeftDomain;
      return path;
    }
    if (stop_here(k + 1, x)) return path;
    path.points.push_back(sample_point(k + 1, x));
  }
  path.terminated = PathEnd::ReachedEnd;
  return path;
}

CharPath trace_path(std::span<const FlowField> snapshots, const GasModel& model, double x0,
                    CharFamily family, TracerConfig cfg) {
  return CharTracer(snapshots, model, cfg).trace(x0, family);
}

double RiccatiBound::eval(double t) const {
  const double denom = X1 * std::log1p(0.5 * std::sqrt(rho0) * Y1 * t) + Y1 / X0;
  return Y1 / denom;
}

RiccatiBound riccati_blowup_bound(double X0, double Y1, double rho0, const GasModel& model) {
  const double sqrt2k = std::sqrt(2.0 * model.k);
  if (!(X0 < -sqrt2k))
    throw NotSupercriticalError("riccati_blowup_bound: X0 must be < -sqrt(2k)");
  if (!(Y1 > 0.0)) throw UnsupportedParametersError("riccati_blowup_bound: Y1 must be > 0");
  if (!(rho0 > 0.0)) throw NonPositiveDensityError("riccati_blowup_bound: rho0 must be > 0");

  RiccatiBound b;
  b.X0 = X0;
  b.Y1 = Y1;
  b.rho0 = rho0;
  b.k = model.k;
  b.X1 = (X0 * X0 - 2.0 * model.k) / (X0 * X0);
  b.t_c_bound = 2.0 / (std::sqrt(rho0) * Y1) * std::expm1(-Y1 / (b.X1 * X0));
  return b;
}

double riccati_ceiling(const RiemannFields& rf0, CharFamily family, const GasModel& model) {
  double ceil_v = std::sqrt(2.0 * model.k);
  if (model.isothermal()) {
    // Decoupled dynamics: only the companion family bounds the density decay.
    const std::vector<double>& comp = family == CharFamily::Lambda ? rf0.Y : rf0.X;
    for (double v : comp) ceil_v = std::max(ceil_v, v);
  } else {
    for (double v : rf0.X) ceil_v = std::max(ceil_v, v);
    for (double v : rf0.Y) ceil_v = std::max(ceil_v, v);
  }
  return ceil_v;
}

namespace {

MonotonicityReport check_window(const CharPath& path, double lo, double hi, double tol,
                                bool expect_decrease) {
  MonotonicityReport rep;
  const bool use_x = path.family == CharFamily::Lambda;
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const double a = use_x ? path.points[i].X : path.points[i].Y;
    const double b = use_x ? path.points[i + 1].X : path.points[i + 1].Y;
    ++rep.pairs_checked;
    if (a <= lo || a >= hi || b <= lo || b >= hi) continue;
    ++rep.pairs_in_window;
    const bool bad = expect_decrease ? (b > a + tol) : (b < a - tol);
    if (bad)
      rep.violations.push_back({path.points[i].t, path.points[i].x, a, b});
  }
  return rep;
}

}  // namespace

MonotonicityReport verify_monotone_buffer(const CharPath& path, const GasModel& model,
                                          double M0, MonotonicityOptions opts) {
  const double delta = opts.guard_frac * M0;
  const double lo = buffer_floor(M0, model) + delta;
  const double hi = M0 - delta;
  return check_window(path, lo, hi, opts.tol_frac * M0, /*expect_decrease=*/true);
}

MonotonicityReport verify_lower_trap(const CharPath& path, double K0,
                                     MonotonicityOptions opts) {
  const double delta = opts.guard_frac * K0;
  return check_window(path, -K0 + delta, -delta, opts.tol_frac * K0,
                      /*expect_decrease=*/false);
}

}  // namespace eplab
