#include "eplab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "eplab/csv.hpp"
#include "eplab/errors.hpp"
#include "eplab/numerics.hpp"
#include "eplab/poisson.hpp"

namespace eplab {

namespace {

using ordered_json = nlohmann::ordered_json;

double jnum(const ordered_json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number()) throw ParseError(std::string("config: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::size_t juint(const ordered_json& j, const char* key, std::size_t def) {
  if (!j.contains(key)) return def;
  return j.at(key).get<std::size_t>();
}

/// Largest |rho'| compatible with the sufficient threshold, with safety
/// factor beta < 1:  sqrt(A g) |rho_x| rho^((g-4)/2) <= beta sqrt(2k)/(1+theta).
double admissible_slope(double rho, const GasModel& m, double beta) {
  if (m.A == 0.0) return std::numeric_limits<double>::infinity();
  return beta * std::sqrt(2.0 * m.k) / ((1.0 + m.theta) * std::sqrt(m.A * m.gamma)) *
         std::pow(rho, 0.5 * (4.0 - m.gamma));
}

double smoothstep01(double xi) {
  xi = std::clamp(xi, 0.0, 1.0);
  return xi * xi * (3.0 - 2.0 * xi);
}

void require_skirt_closed(const std::vector<double>& rho, double floor_v,
                          const std::string& preset) {
  if (rho.front() > floor_v * 1.0001 || rho.back() > floor_v * 1.0001)
    throw UnsupportedParametersError(preset +
                                     ": domain too small, cutoff skirt does not reach the "
                                     "density floor before the boundary");
}

struct GaussParams {
  double amp = 1.0;
  double core_w = 1.0;
  double floor_v = 0.02;
  double beta = 0.7;
  double u_amp = 0.0;
  double u_w = 2.0;
};

FlowField build_gauss(const Grid1D& g, const GasModel& model, const GaussParams& p) {
  if (!(p.amp > 0.0) || !(p.core_w > 0.0) || !(p.floor_v > 0.0) || !(p.beta > 0.0) ||
      !(p.beta < 1.0))
    throw UnsupportedParametersError("gauss-subcritical: need amp, core_w, floor > 0 and 0 < beta < 1");

  const std::size_t n = g.n;
  std::vector<double> rho(n, p.floor_v);
  auto target = [&](double x) {
    return p.floor_v + p.amp * std::exp(-0.5 * x * x / (p.core_w * p.core_w));
  };

  // Peak cell, then march outward: follow the target until its decay exceeds
  // the admissible slope, then ride the admissible envelope down to the floor.
  std::size_t ic = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(g.center(i));
    if (d < best) { best = d; ic = i; }
  }
  rho[ic] = target(g.center(ic));
  for (std::size_t i = ic + 1; i < n; ++i) {
    const double env = rho[i - 1] - g.dx * admissible_slope(rho[i - 1], model, p.beta);
    rho[i] = std::max(p.floor_v, std::max(target(g.center(i)), env));
  }
  for (std::size_t i = ic; i-- > 0;) {
    const double env = rho[i + 1] - g.dx * admissible_slope(rho[i + 1], model, p.beta);
    rho[i] = std::max(p.floor_v, std::max(target(g.center(i)), env));
  }
  require_skirt_closed(rho, p.floor_v, "gauss-subcritical");

  std::vector<double> u(n, 0.0);
  if (p.u_amp != 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      u[i] = p.u_amp * smoothstep01((g.center(i) / p.u_w + 1.0) * 0.5);
  }
  return FlowField(g, std::move(rho), std::move(u), 0.0);
}

struct Ex4Params {
  double epsilon = 0.1;
  double sigma = 0.01;  // defaults to epsilon / 10
  double plateau_left = 2.0;
  double plateau_right = 2.0;
  double floor_v = 1e-6;
  double beta = 0.7;
};

FlowField build_ex4(const Grid1D& g, const GasModel& model, const Ex4Params& p) {
  if (!(p.epsilon > 0.0) || !(p.sigma > 0.0) || !(p.sigma <= 0.5 * p.epsilon))
    throw UnsupportedParametersError("paper-ex4: need epsilon > 0 and 0 < sigma <= epsilon/2");
  if (!(p.floor_v > 0.0) || !(p.plateau_left > 2.0 * p.sigma) ||
      !(p.plateau_right > 2.0 * p.sigma))
    throw UnsupportedParametersError("paper-ex4: invalid floor or plateau extents");

  // Plateau 1, linear ramp to 1/2 over [0, epsilon], plateau 1/2. The two
  // corners are rounded C1 with quadratic arcs over width sigma (a soft
  // clamp of x to [0, epsilon]), which keeps the mollified slope within
  // [-1/(2 epsilon), 0]; admissible cutoff skirts bring the plateaus down
  // to the floor away from the ramp.
  auto soft_clamp = [&](double x) {
    if (x <= -p.sigma) return 0.0;
    if (x < p.sigma) return (x + p.sigma) * (x + p.sigma) / (4.0 * p.sigma);
    if (x <= p.epsilon - p.sigma) return x;
    if (x < p.epsilon + p.sigma) {
      const double d = p.epsilon + p.sigma - x;
      return p.epsilon - d * d / (4.0 * p.sigma);
    }
    return p.epsilon;
  };
  auto base = [&](double x) { return 1.0 - soft_clamp(x) / (2.0 * p.epsilon); };

  const std::size_t n = g.n;
  const double x_lo = -p.plateau_left;
  const double x_hi = p.epsilon + p.plateau_right;
  if (g.x_min >= x_lo || g.x_max <= x_hi)
    throw UnsupportedParametersError("paper-ex4: grid does not contain the profile");

  std::vector<double> rho(n, p.floor_v);
  std::size_t il = n, ir = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.center(i);
    if (x >= x_lo && x <= x_hi) {
      rho[i] = base(x);
      il = std::min(il, i);
      ir = std::max(ir, i);
    }
  }
  for (std::size_t i = il; i-- > 0;) {
    const double env = rho[i + 1] - g.dx * admissible_slope(rho[i + 1], model, p.beta);
    rho[i] = std::max(p.floor_v, env);
  }
  for (std::size_t i = ir + 1; i < n; ++i) {
    const double env = rho[i - 1] - g.dx * admissible_slope(rho[i - 1], model, p.beta);
    rho[i] = std::max(p.floor_v, env);
  }
  require_skirt_closed(rho, p.floor_v, "paper-ex4");

  return FlowField(g, std::move(rho), std::vector<double>(n, 0.0), 0.0);
}

struct PressurelessParams {
  double rho_c = 1.0;
  double dip_amp = 1.0;
  double dip_w = 2.0;
  double plateau_half = 4.0;
  double shoulder_w = 2.0;
  double floor_v = 0.01;
};

FlowField build_pressureless(const Grid1D& g, const GasModel& model,
                             const PressurelessParams& p) {
  if (model.A != 0.0)
    throw UnsupportedParametersError("pressureless: model.A must be 0");
  if (!(p.dip_w < p.plateau_half))
    throw UnsupportedParametersError("pressureless: dip must sit inside the plateau");
  if (!(p.floor_v > 0.0) || !(p.rho_c > p.floor_v))
    throw UnsupportedParametersError("pressureless: need rho_c > floor > 0");

  const std::size_t n = g.n;
  std::vector<double> rho(n), u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double ax = std::abs(g.center(i));
    if (ax <= p.plateau_half) {
      rho[i] = p.rho_c;
    } else if (ax <= p.plateau_half + p.shoulder_w) {
      const double c = std::cos(0.5 * M_PI * (ax - p.plateau_half) / p.shoulder_w);
      rho[i] = p.floor_v + (p.rho_c - p.floor_v) * c * c;
    } else {
      rho[i] = p.floor_v;
    }
    const double x = g.center(i);
    // Linear converging core of half-width dip_w/2 (discrete slope exactly
    // -dip_amp there), cosine shoulders returning to rest by |x| = dip_w.
    const double w1 = 0.5 * p.dip_w;
    if (std::abs(x) <= w1) {
      u[i] = -p.dip_amp * x;
    } else if (std::abs(x) <= p.dip_w) {
      const double c = std::cos(0.5 * M_PI * (std::abs(x) - w1) / (p.dip_w - w1));
      u[i] = -p.dip_amp * w1 * (x > 0.0 ? 1.0 : -1.0) * c * c;
    }
  }
  return FlowField(g, std::move(rho), std::move(u), 0.0);
}

std::vector<double> auto_seeds(const FlowField& init) {
  double lo = *std::min_element(init.rho.begin(), init.rho.end());
  double hi = *std::max_element(init.rho.begin(), init.rho.end());
  const double cut = lo + 0.25 * (hi - lo);
  std::size_t ia = init.size(), ib = 0;
  for (std::size_t i = 0; i < init.size(); ++i) {
    if (init.rho[i] >= cut) { ia = std::min(ia, i); ib = std::max(ib, i); }
  }
  std::vector<double> seeds;
  if (ia >= ib) return seeds;
  const double xa = init.grid.center(ia), xb = init.grid.center(ib);
  for (int j = 0; j < 12; ++j)
    seeds.push_back(xa + (xb - xa) * (j + 0.5) / 12.0);
  return seeds;
}

}  // namespace

Scenario build_scenario(const std::string& config_json) {
  ordered_json j;
  try {
    j = ordered_json::parse(config_json);
  } catch (const std::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  Scenario sc;
  sc.name = j.value("name", std::string("unnamed"));

  const ordered_json jm = j.value("model", ordered_json::object());
  sc.model = GasModel(jnum(jm, "A", 1.0), jnum(jm, "gamma", 1.0), jnum(jm, "k", 1.0));

  if (!j.contains("grid")) throw ParseError("config: missing 'grid'");
  const ordered_json jg = j.at("grid");
  sc.grid = Grid1D(jnum(jg, "x_min", -1.0), jnum(jg, "x_max", 1.0), juint(jg, "n", 0));

  if (!j.contains("initial") || !j.at("initial").contains("preset"))
    throw ParseError("config: missing 'initial.preset'");
  const ordered_json ji = j.at("initial");
  const std::string preset = ji.at("preset").get<std::string>();
  const ordered_json jp = ji.value("params", ordered_json::object());

  ordered_json resolved_params;
  if (preset == "gauss-subcritical") {
    GaussParams p;
    p.amp = jnum(jp, "amp", p.amp);
    p.core_w = jnum(jp, "core_w", p.core_w);
    p.floor_v = jnum(jp, "floor", p.floor_v);
    p.beta = jnum(jp, "beta", p.beta);
    p.u_amp = jnum(jp, "u_amp", p.u_amp);
    p.u_w = jnum(jp, "u_w", p.u_w);
    sc.initial = build_gauss(sc.grid, sc.model, p);
    resolved_params = {{"amp", p.amp},     {"core_w", p.core_w}, {"floor", p.floor_v},
                       {"beta", p.beta},   {"u_amp", p.u_amp},   {"u_w", p.u_w}};
  } else if (preset == "paper-ex4") {
    Ex4Params p;
    p.epsilon = jnum(jp, "epsilon", p.epsilon);
    p.sigma = jnum(jp, "sigma", p.epsilon / 10.0);
    p.plateau_left = jnum(jp, "plateau_left", p.plateau_left);
    p.plateau_right = jnum(jp, "plateau_right", p.plateau_right);
    p.floor_v = jnum(jp, "floor", p.floor_v);
    p.beta = jnum(jp, "beta", p.beta);
    sc.initial = build_ex4(sc.grid, sc.model, p);
    resolved_params = {{"epsilon", p.epsilon},
                       {"sigma", p.sigma},
                       {"plateau_left", p.plateau_left},
                       {"plateau_right", p.plateau_right},
                       {"floor", p.floor_v},
                       {"beta", p.beta}};
  } else if (preset == "pressureless") {
    PressurelessParams p;
    p.rho_c = jnum(jp, "rho_c", p.rho_c);
    p.dip_amp = jnum(jp, "dip_amp", p.dip_amp);
    p.dip_w = jnum(jp, "dip_w", p.dip_w);
    p.plateau_half = jnum(jp, "plateau_half", p.plateau_half);
    p.shoulder_w = jnum(jp, "shoulder_w", p.shoulder_w);
    p.floor_v = jnum(jp, "floor", p.floor_v);
    sc.initial = build_pressureless(sc.grid, sc.model, p);
    resolved_params = {{"rho_c", p.rho_c},
                       {"dip_amp", p.dip_amp},
                       {"dip_w", p.dip_w},
                       {"plateau_half", p.plateau_half},
                       {"shoulder_w", p.shoulder_w},
                       {"floor", p.floor_v}};
  } else if (preset == "custom") {
    if (!jp.contains("csv")) throw ParseError("custom preset: missing params.csv");
    const std::string path = jp.at("csv").get<std::string>();
    sc.initial = resample_to_grid(read_initial_csv(path), sc.grid);
    resolved_params = {{"csv", path}};
  } else {
    throw UnknownPresetError("unknown preset '" + preset + "'");
  }

  const ordered_json js = j.value("solver", ordered_json::object());
  sc.solver.cfl = jnum(js, "cfl", 0.45);
  sc.solver.t_end = jnum(js, "t_end", 1.0);
  sc.solver.snapshot_dt = jnum(js, "snapshot_dt", 0.0);
  sc.solver.blowup_gradient_cap = jnum(js, "blowup_gradient_cap", 0.0);
  sc.solver.blowup_slope_factor = jnum(js, "blowup_slope_factor", 0.0);
  sc.solver.rho_floor = jnum(js, "rho_floor", 1e-10);
  sc.solver.max_steps = juint(js, "max_steps", 50'000'000);
  sc.solver.diag_rho_min = jnum(js, "diag_rho_min", 0.0);
  sc.solver.diag_x_margin = jnum(js, "diag_x_margin", 0.0);
  sc.solver.poisson.tol_support = jnum(js, "tol_support", 1e-8);
  sc.solver.poisson.max_charge = jnum(js, "max_charge", 1e6);
  if (!(sc.solver.cfl > 0.0 && sc.solver.cfl < 1.0))
    throw UnsupportedParametersError("solver: need 0 < cfl < 1");
  if (!(sc.solver.t_end > 0.0)) throw UnsupportedParametersError("solver: need t_end > 0");

  if (j.contains("seeds") && j.at("seeds").is_array() && !j.at("seeds").empty()) {
    for (const auto& v : j.at("seeds")) sc.seeds.push_back(v.get<double>());
  } else {
    sc.seeds = auto_seeds(sc.initial);
  }

  ordered_json resolved;
  resolved["name"] = sc.name;
  resolved["model"] = {{"A", sc.model.A}, {"gamma", sc.model.gamma}, {"k", sc.model.k}};
  resolved["grid"] = {{"x_min", sc.grid.x_min}, {"x_max", sc.grid.x_max}, {"n", sc.grid.n}};
  resolved["initial"] = {{"preset", preset}, {"params", resolved_params}};
  resolved["solver"] = {{"cfl", sc.solver.cfl},
                        {"t_end", sc.solver.t_end},
                        {"snapshot_dt", sc.solver.snapshot_dt},
                        {"blowup_gradient_cap", sc.solver.blowup_gradient_cap},
                        {"blowup_slope_factor", sc.solver.blowup_slope_factor},
                        {"rho_floor", sc.solver.rho_floor},
                        {"max_steps", sc.solver.max_steps},
                        {"diag_rho_min", sc.solver.diag_rho_min},
                        {"diag_x_margin", sc.solver.diag_x_margin},
                        {"tol_support", sc.solver.poisson.tol_support},
                        {"max_charge", sc.solver.poisson.max_charge}};
  resolved["seeds"] = sc.seeds;
  sc.config_json = resolved.dump(2);
  return sc;
}

std::string scenario_to_json(const Scenario& sc) { return sc.config_json; }

namespace {

ordered_json stock_config(const std::string& name);

const std::vector<std::string> kStockNames = {
    "iso-sub",          "iso-sub-shear",     "g14-sub", "g2-sub",
    "g2-sub-k2",        "ex4",               "ex4-wide", "iso-super",
    "pressureless-sub", "pressureless-super"};

ordered_json gauss_config(const std::string& name, double A, double gamma, double k,
                          double amp, double core_w, double floor_v, double half_width,
                          std::size_t n, double t_end, double snapshot_dt, double cap,
                          double u_amp = 0.0, double u_w = 2.0) {
  ordered_json j;
  j["name"] = name;
  j["model"] = {{"A", A}, {"gamma", gamma}, {"k", k}};
  j["grid"] = {{"x_min", -half_width}, {"x_max", half_width}, {"n", n}};
  j["initial"] = {{"preset", "gauss-subcritical"},
                  {"params",
                   {{"amp", amp},
                    {"core_w", core_w},
                    {"floor", floor_v},
                    {"beta", 0.7},
                    {"u_amp", u_amp},
                    {"u_w", u_w}}}};
  j["solver"] = {{"t_end", t_end},
                 {"snapshot_dt", snapshot_dt},
                 {"blowup_gradient_cap", cap},
                 {"diag_rho_min", 3.0 * floor_v},
                 {"diag_x_margin", 0.22 * half_width},
                 {"tol_support", 0.05}};
  return j;
}

ordered_json ex4_config(const std::string& name, double gamma, double A, double k,
                        double epsilon, double half_width, std::size_t n, double t_end,
                        double snapshot_dt, double cap, double floor_v,
                        double slope_factor) {
  ordered_json j;
  j["name"] = name;
  j["model"] = {{"A", A}, {"gamma", gamma}, {"k", k}};
  j["grid"] = {{"x_min", -half_width}, {"x_max", half_width}, {"n", n}};
  j["initial"] = {{"preset", "paper-ex4"},
                  {"params",
                   {{"epsilon", epsilon},
                    {"sigma", epsilon / 10.0},
                    {"plateau_left", 2.0},
                    {"plateau_right", 2.0},
                    {"floor", floor_v},
                    {"beta", 0.7}}}};
  j["solver"] = {{"t_end", t_end},
                 {"snapshot_dt", snapshot_dt},
                 {"blowup_gradient_cap", cap},
                 {"blowup_slope_factor", slope_factor},
                 {"diag_rho_min", 0.1},
                 {"diag_x_margin", 0.1 * half_width},
                 {"tol_support", std::max(1e-3, 100.0 * floor_v)}};
  // Seeds bracket the ramp, where breakdown margins are worst.
  j["seeds"] = {-0.5, -0.2, 0.25 * epsilon, 0.5 * epsilon, 0.75 * epsilon, epsilon + 0.2};
  return j;
}

ordered_json pressureless_config(const std::string& name, double k, double dip_amp,
                                 double half_width, std::size_t n, double t_end,
                                 double snapshot_dt, double cap) {
  ordered_json j;
  j["name"] = name;
  j["model"] = {{"A", 0.0}, {"gamma", 1.0}, {"k", k}};
  j["grid"] = {{"x_min", -half_width}, {"x_max", half_width}, {"n", n}};
  j["initial"] = {{"preset", "pressureless"},
                  {"params",
                   {{"rho_c", 1.0},
                    {"dip_amp", dip_amp},
                    {"dip_w", 2.0},
                    {"plateau_half", 4.0},
                    {"shoulder_w", 2.0},
                    {"floor", 0.01}}}};
  j["solver"] = {{"t_end", t_end},
                 {"snapshot_dt", snapshot_dt},
                 {"blowup_gradient_cap", cap},
                 {"blowup_slope_factor", 1.3},
                 {"diag_rho_min", 0.03},
                 {"diag_x_margin", 0.2 * half_width},
                 {"tol_support", 0.05}};
  return j;
}

ordered_json stock_config(const std::string& name) {
  // Sub-critical bumps: domains sized so that waves and the slowly
  // accelerating floor stay clear of the masked diagnostic window for the
  // whole run; t_end is about five sound-crossing times of the bump core.
  if (name == "iso-sub")
    return gauss_config(name, 0.5, 1.0, 0.25, 1.0, 1.0, 0.015, 48.0, 4096, 12.0, 0.06, 60.0);
  if (name == "iso-sub-shear")
    return gauss_config(name, 0.5, 1.0, 0.25, 1.0, 1.0, 0.015, 52.0, 4096, 12.0, 0.06, 60.0,
                        /*u_amp=*/2.3, /*u_w=*/2.0);
  if (name == "g14-sub")
    return gauss_config(name, 0.3, 1.4, 0.3, 0.8, 1.2, 0.01, 56.0, 4096, 13.0, 0.065, 60.0);
  if (name == "g2-sub")
    return gauss_config(name, 0.3, 2.0, 0.3, 1.0, 1.2, 0.01, 56.0, 4096, 13.0, 0.065, 60.0);
  if (name == "g2-sub-k2")
    return gauss_config(name, 0.5, 2.0, 0.6, 1.0, 1.2, 0.01, 60.0, 4096, 9.0, 0.045, 60.0);
  if (name == "ex4")
    return ex4_config(name, 3.0, 1.0, 1.0, 0.1, 16.0, 4096, 1.0, 0.005, 60.0, 1e-5, 3.0);
  if (name == "ex4-wide")  // gap data: between the breakdown and smoothness bounds
    return ex4_config(name, 3.0, 1.0, 1.0, 1.2, 20.0, 4096, 6.0, 0.02, 60.0, 1e-5, 3.0);
  if (name == "iso-super")
    return ex4_config(name, 1.0, 1.0, 1.0, 0.1, 26.0, 4096, 1.0, 0.005, 60.0, 0.02, 3.0);
  if (name == "pressureless-sub")
    return pressureless_config(name, 0.125, 0.45, 32.0, 2047, 12.0, 0.06, 50.0);
  if (name == "pressureless-super")
    return pressureless_config(name, 0.125, 0.55, 32.0, 2047, 12.0, 0.06, 50.0);
  throw UnknownPresetError("unknown stock scenario '" + name + "'");
}

}  // namespace

std::vector<std::string> stock_scenario_names() { return kStockNames; }

std::string stock_scenario_config(const std::string& name) {
  return stock_config(name).dump(2);
}

RunResult run_scenario(const Scenario& sc) {
  RunResult res;
  RunReport& rep = res.report;

  rep.threshold = classify(sc.initial, sc.model);
  res.sim = simulate(sc.initial, sc.solver, sc.model);
  rep.trace = res.sim.trace;

  const std::vector<double>& mass = rep.trace.mass;
  if (!mass.empty()) {
    const double m0 = mass.front();
    double dev = 0.0;
    for (double m : mass) dev = std::max(dev, std::abs(m - m0));
    rep.mass_conserved = dev <= 1e-12 * std::max(std::abs(m0), 1e-300);
  }
  rep.apriori_all_ok = std::all_of(rep.trace.apriori_ok.begin(), rep.trace.apriori_ok.end(),
                                   [](std::uint8_t f) { return f != 0; });

  // Riccati bound seeded at the worst breakdown-margin point.
  if (rep.threshold.verdict == Verdict::FiniteTimeBreakdown) {
    const RiemannFields rf0 = to_riemann(sc.initial, sc.model);
    double worst = 0.0;
    std::size_t iw = 0;
    CharFamily fam = CharFamily::Lambda;
    for (std::size_t i = 0; i < sc.initial.size(); ++i) {
      if (rf0.X[i] < worst) { worst = rf0.X[i]; iw = i; fam = CharFamily::Lambda; }
      if (rf0.Y[i] < worst) { worst = rf0.Y[i]; iw = i; fam = CharFamily::Mu; }
    }
    if (worst < -std::sqrt(2.0 * sc.model.k)) {
      const double ceil_v = riccati_ceiling(rf0, fam, sc.model);
      res.riccati_bound =
          riccati_blowup_bound(worst, ceil_v, sc.initial.rho[iw], sc.model);
      rep.riccati = RiccatiSummary{fam, sc.initial.grid.center(iw), worst, ceil_v,
                                   sc.initial.rho[iw], res.riccati_bound->t_c_bound};
    }
  }

  // Characteristic paths with buffer-zone / lower-trap verification.
  if (res.sim.snapshots.size() >= 2) {
    TracerConfig tc;
    tc.blowup_ux_limit = 0.5 * rep.trace.gradient_cap;
    tc.rho_stop = sc.solver.diag_rho_min;
    if (sc.solver.diag_x_margin > 0.0) {
      tc.x_window_lo = sc.grid.x_min + sc.solver.diag_x_margin;
      tc.x_window_hi = sc.grid.x_max - sc.solver.diag_x_margin;
    }
    const CharTracer tracer(res.sim.snapshots, sc.model, tc);

    std::vector<double> seeds = sc.seeds;
    if (rep.riccati) seeds.push_back(rep.riccati->x0);
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      for (CharFamily fam : {CharFamily::Lambda, CharFamily::Mu}) {
        CharPath path = tracer.trace(seeds[si], fam);
        PathSummary ps;
        ps.family = fam;
        ps.x0 = seeds[si];
        ps.end = path.terminated;
        ps.n_points = path.points.size();
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const PathPoint& q : path.points) {
          const double v = fam == CharFamily::Lambda ? q.X : q.Y;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (path.points.empty()) lo = hi = 0.0;
        ps.min_value = lo;
        ps.max_value = hi;
        ps.buffer = verify_monotone_buffer(path, sc.model, rep.threshold.M0);
        ps.trap = verify_lower_trap(path, rep.threshold.K0);
        rep.paths.push_back(std::move(ps));
        res.paths.push_back(std::move(path));
      }
    }
  }

  switch (rep.threshold.verdict) {
    case Verdict::GlobalSmooth: {
      const bool agree = rep.trace.outcome == Outcome::ReachedTEnd;
      rep.consistency = agree ? "agree" : "disagree";
      rep.exit_code = agree ? 0 : 2;
      break;
    }
    case Verdict::FiniteTimeBreakdown: {
      const bool agree = rep.trace.outcome == Outcome::BlowupDetected;
      rep.consistency = agree ? "agree" : "disagree";
      rep.exit_code = agree ? 0 : 2;
      break;
    }
    case Verdict::Indeterminate:
      rep.consistency = "resolved-empirically: " + to_string(rep.trace.outcome);
      rep.exit_code = 0;
      break;
  }
  return res;
}

std::string run_report_to_json(const Scenario& sc, const RunReport& rep) {
  ordered_json j;
  j["scenario"] = ordered_json::parse(sc.config_json);
  j["threshold"] = ordered_json::parse(report_to_json(rep.threshold, &sc.grid));

  ordered_json t;
  t["outcome"] = to_string(rep.trace.outcome);
  if (std::isfinite(rep.trace.t_c_numeric)) t["t_c_numeric"] = rep.trace.t_c_numeric;
  t["steps"] = rep.trace.steps;
  t["C0"] = rep.trace.C0;
  t["E0"] = rep.trace.E0;
  t["gradient_cap"] = rep.trace.gradient_cap;
  t["domain_ok"] = rep.trace.domain_ok;
  t["support_ok"] = rep.trace.support_ok;
  t["mass_conserved"] = rep.mass_conserved;
  t["apriori_all_ok"] = rep.apriori_all_ok;
  t["times"] = rep.trace.times;
  t["mass"] = rep.trace.mass;
  t["max_abs_ux"] = rep.trace.max_abs_ux;
  t["max_abs_rhox"] = rep.trace.max_abs_rhox;
  t["max_rho"] = rep.trace.max_rho;
  t["min_X"] = rep.trace.min_X;
  t["max_X"] = rep.trace.max_X;
  t["min_Y"] = rep.trace.min_Y;
  t["max_Y"] = rep.trace.max_Y;
  t["sup_RS"] = rep.trace.sup_RS;
  t["apriori_bound"] = rep.trace.apriori_bound;
  j["trace"] = std::move(t);

  ordered_json paths = ordered_json::array();
  for (const PathSummary& ps : rep.paths) {
    ordered_json p;
    p["family"] = to_string(ps.family);
    p["x0"] = ps.x0;
    p["terminated"] = to_string(ps.end);
    p["n_points"] = ps.n_points;
    p["min_value"] = ps.min_value;
    p["max_value"] = ps.max_value;
    p["buffer_pairs_in_window"] = ps.buffer.pairs_in_window;
    p["buffer_violations"] = ps.buffer.violations.size();
    p["trap_pairs_in_window"] = ps.trap.pairs_in_window;
    p["trap_violations"] = ps.trap.violations.size();
    paths.push_back(std::move(p));
  }
  j["paths"] = std::move(paths);

  if (rep.riccati) {
    j["riccati"] = ordered_json{{"family", to_string(rep.riccati->family)},
                                {"x0", rep.riccati->x0},
                                {"X0", rep.riccati->X0},
                                {"Y1", rep.riccati->Y1},
                                {"rho0", rep.riccati->rho0},
                                {"t_c_bound", rep.riccati->t_c_bound}};
  }
  j["consistency"] = rep.consistency;
  j["exit_code"] = rep.exit_code;
  return j.dump(2);
}

void write_run_artifacts(const std::string& out_dir, const Scenario& sc, const RunResult& res,
                         bool write_snapshots) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_text_file(out_dir + "/report.json", run_report_to_json(sc, res.report) + "\n");
  write_text_file(out_dir + "/scenario.json", sc.config_json + "\n");

  if (write_snapshots) {
    fs::create_directories(out_dir + "/snapshots");
    char name[64];
    for (std::size_t i = 0; i < res.sim.snapshots.size(); ++i) {
      const FlowField& f = res.sim.snapshots[i];
      const RiemannFields rf = to_riemann(f, sc.model);
      PoissonConfig pc = sc.solver.poisson;
      pc.tol_support = std::numeric_limits<double>::infinity();  // already checked at t=0
      const PoissonField pf = field_from_density(f, pc);
      std::snprintf(name, sizeof(name), "/snapshots/snapshot_%04zu.csv", i);
      write_text_file(out_dir + name, snapshot_csv(f, rf, pf));
    }
  }

  if (!res.paths.empty()) {
    fs::create_directories(out_dir + "/paths");
    char name[64];
    for (std::size_t i = 0; i < res.paths.size(); ++i) {
      const CharPath& p = res.paths[i];
      const RiccatiBound* bound = nullptr;
      if (res.riccati_bound && res.report.riccati &&
          p.family == res.report.riccati->family &&
          std::abs(p.x0 - res.report.riccati->x0) < 0.5 * sc.grid.dx)
        bound = &*res.riccati_bound;
      std::snprintf(name, sizeof(name), "/paths/%03zu_%s.csv", i,
                    to_string(p.family).c_str());
      write_text_file(out_dir + name, path_csv(p, bound));
    }
  }
}

}  // namespace eplab
