// Run-based property tests tying the solver output to the characteristic
// ODE system: slope dynamics along traced paths, Riccati-bound dominance in
// a super-critical run, and refinement behavior of the detected blow-up.

#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "eplab/characteristics.hpp"
#include "eplab/scenario.hpp"
#include "eplab/solver.hpp"

using namespace eplab;

namespace {

Scenario stock_modified(const std::string& name,
                        const std::function<void(nlohmann::ordered_json&)>& edit) {
  auto j = nlohmann::ordered_json::parse(stock_scenario_config(name));
  edit(j);
  return build_scenario(j.dump());
}

}  // namespace

TEST_CASE("sampled slope dynamics match the characteristic ODE within 10%") {
  // d/dt of X sampled along lambda paths against
  // sqrt(rho) (k - (1+theta)/2 X^2 + (theta/2) X Y), aggregated in L2.
  const Scenario sc = build_scenario(stock_scenario_config("g2-sub"));
  const SimRun run = simulate(sc.initial, sc.solver, sc.model);
  REQUIRE(run.trace.outcome == Outcome::ReachedTEnd);

  TracerConfig tc;
  tc.rho_stop = sc.solver.diag_rho_min;
  tc.x_window_lo = sc.grid.x_min + sc.solver.diag_x_margin;
  tc.x_window_hi = sc.grid.x_max - sc.solver.diag_x_margin;
  const CharTracer tracer(run.snapshots, sc.model, tc);

  const GasModel& m = sc.model;
  for (CharFamily fam : {CharFamily::Lambda, CharFamily::Mu}) {
    double num = 0.0, den = 0.0;
    for (double x0 : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const CharPath p = tracer.trace(x0, fam);
      REQUIRE(p.points.size() > 20);
      for (std::size_t i = 1; i + 1 < p.points.size(); ++i) {
        const PathPoint& a = p.points[i - 1];
        const PathPoint& b = p.points[i + 1];
        const PathPoint& c = p.points[i];
        const bool lam = fam == CharFamily::Lambda;
        const double own = lam ? c.X : c.Y;
        const double other = lam ? c.Y : c.X;
        const double dvdt = ((lam ? b.X : b.Y) - (lam ? a.X : a.Y)) / (b.t - a.t);
        const double rhs = std::sqrt(c.rho) * (m.k - 0.5 * (1.0 + m.theta) * own * own +
                                               0.5 * m.theta * own * other);
        num += (dvdt - rhs) * (dvdt - rhs);
        den += rhs * rhs;
      }
    }
    CHECK(std::sqrt(num / den) <= 0.10);
  }
}

TEST_CASE("riccati bound dominates the sampled collapse while it is resolved") {
  // Detector-free ex4 run: the mu-family slope seeded at the worst margin
  // must stay below the closed-form bound (with 10% slack) for as long as
  // the discrete collapse still progresses; after that the scheme saturates
  // at the resolution scale while the bound continues to -infinity.
  const Scenario sc = stock_modified("ex4", [](nlohmann::ordered_json& j) {
    j["solver"]["blowup_gradient_cap"] = 1e18;
    j["solver"]["blowup_slope_factor"] = 0.0;
    j["solver"]["t_end"] = 0.28;
    j["solver"]["snapshot_dt"] = 0.002;
  });
  const RunResult res = run_scenario(sc);
  REQUIRE(res.riccati_bound.has_value());
  REQUIRE(res.report.riccati.has_value());
  const RiccatiBound& bound = *res.riccati_bound;

  // witness path is appended last by run_scenario
  const CharPath& path = res.paths.back();
  REQUIRE(path.family == res.report.riccati->family);
  REQUIRE(path.points.size() > 50);

  std::size_t argmin = 0;
  double vmin = 1e300;
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const double v =
        path.family == CharFamily::Lambda ? path.points[i].X : path.points[i].Y;
    if (v < vmin) {
      vmin = v;
      argmin = i;
    }
  }
  const double t_resolved = path.points[argmin].t;
  CHECK(t_resolved >= 0.3 * bound.t_c_bound);  // a meaningful resolved window

  for (std::size_t i = 0; i <= argmin; ++i) {
    const PathPoint& q = path.points[i];
    const double v = path.family == CharFamily::Lambda ? q.X : q.Y;
    REQUIRE(q.t < bound.t_c_bound);
    const double b = bound.eval(q.t);
    CHECK(v <= b + 0.1 * std::abs(b));
  }
}

TEST_CASE("detected blow-up time shrinks (within 10%) as the grid refines") {
  double prev = 0.0;
  for (std::size_t n : {1024u, 2048u, 4096u}) {
    const Scenario sc =
        stock_modified("ex4", [&](nlohmann::ordered_json& j) { j["grid"]["n"] = n; });
    const SimRun run = simulate(sc.initial, sc.solver, sc.model);
    REQUIRE(run.trace.outcome == Outcome::BlowupDetected);
    if (prev > 0.0) CHECK(run.trace.t_c_numeric <= prev * 1.1);
    prev = run.trace.t_c_numeric;
  }
}

TEST_CASE("grid-level scaled slopes of a smooth run stay inside the region") {
  // Theorem-level invariant region at the field level, 5% inflated, for a
  // GlobalSmooth-classified run.
  const Scenario sc = build_scenario(stock_scenario_config("g14-sub"));
  const RunResult res = run_scenario(sc);
  const ThresholdReport& th = res.report.threshold;
  REQUIRE(th.verdict == Verdict::GlobalSmooth);
  const SimulationTrace& tr = res.report.trace;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    CHECK(tr.min_X[i] >= -th.K0 * 1.05);
    CHECK(tr.min_Y[i] >= -th.K0 * 1.05);
    CHECK(tr.max_X[i] <= th.M0 * 1.05);
    CHECK(tr.max_Y[i] <= th.M0 * 1.05);
  }
}
