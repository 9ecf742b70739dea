#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "eplab/csv.hpp"
#include "eplab/poisson.hpp"
#include "eplab/scenario.hpp"
#include "test_util.hpp"

using namespace eplab;

namespace {

std::string with_n(const std::string& config, std::size_t n) {
  // crude but sufficient: the stock configs carry exactly one "n": entry
  const std::string key = "\"n\":";
  const auto pos = config.find(key);
  REQUIRE(pos != std::string::npos);
  const auto end = config.find_first_of(",}", pos);
  return config.substr(0, pos + key.size()) + " " + std::to_string(n) + config.substr(end);
}

}  // namespace

TEST_CASE("every stock scenario materializes and classifies as designed") {
  for (const std::string& name : stock_scenario_names()) {
    CAPTURE(name);
    const Scenario sc = build_scenario(stock_scenario_config(name));
    const ThresholdReport rep = classify(sc.initial, sc.model);
    if (name.find("sub") != std::string::npos && name.find("pressureless") == std::string::npos)
      CHECK(rep.verdict == Verdict::GlobalSmooth);
    if (name == "pressureless-sub") CHECK(rep.verdict == Verdict::GlobalSmooth);
    if (name == "ex4" || name == "iso-super" || name == "pressureless-super")
      CHECK(rep.verdict == Verdict::FiniteTimeBreakdown);
    if (name == "ex4-wide") CHECK(rep.verdict == Verdict::Indeterminate);
    CHECK_FALSE(sc.seeds.empty());
    for (double s : sc.seeds) {
      CHECK(s > sc.grid.x_min);
      CHECK(s < sc.grid.x_max);
    }
  }
}

TEST_CASE("ex4 ramp slope matches the closed form") {
  const Scenario sc = build_scenario(stock_scenario_config("ex4"));
  const RiemannFields rf = to_riemann(sc.initial, sc.model);
  // s0 = -sqrt(A gamma) / (2 eps) on the ramp interior (gamma = 3 makes the
  // density power vanish); eps = 0.1
  const double expected = -std::sqrt(3.0) / 0.2;
  const double min_s = *std::min_element(rf.s.begin(), rf.s.end());
  CHECK(min_s == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("wide ramps are not super-critical") {
  // eps large: ramp slope -1/(2 eps) is tame and the verdict flips to
  // GlobalSmooth via MT
  std::string cfg = R"({
    "name": "ex4-gentle",
    "model": {"A": 1.0, "gamma": 3.0, "k": 1.0},
    "grid": {"x_min": -30.0, "x_max": 30.0, "n": 2048},
    "initial": {"preset": "paper-ex4",
                "params": {"epsilon": 10.0, "sigma": 1.0, "plateau_left": 3.0,
                            "plateau_right": 3.0, "floor": 1e-5, "beta": 0.7}},
    "solver": {"t_end": 1.0}
  })";
  const Scenario sc = build_scenario(cfg);
  CHECK(classify(sc.initial, sc.model).verdict == Verdict::GlobalSmooth);
}

TEST_CASE("sub-critical preset margins are positive everywhere") {
  for (const std::string name : {"iso-sub", "g14-sub", "g2-sub", "g2-sub-k2"}) {
    CAPTURE(name);
    const Scenario sc = build_scenario(stock_scenario_config(name));
    const ThresholdReport rep = classify(sc.initial, sc.model);
    CHECK(rep.worst_margin > 0.0);
  }
}

TEST_CASE("pressureless classifier flip sits at the analytic threshold") {
  // dip amplitude alpha against alpha* = sqrt(2 k rho_c); k = 0.125, rho_c = 1
  auto config_for = [](double alpha) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), R"({
      "name": "flip",
      "model": {"A": 0.0, "gamma": 1.0, "k": 0.125},
      "grid": {"x_min": -16.0, "x_max": 16.0, "n": 255},
      "initial": {"preset": "pressureless",
                  "params": {"rho_c": 1.0, "dip_amp": %.17g, "dip_w": 2.0,
                              "plateau_half": 4.0, "shoulder_w": 2.0, "floor": 0.01}},
      "solver": {"t_end": 1.0}
    })", alpha);
    return std::string(buf);
  };
  auto is_breakdown = [&](double alpha) {
    const Scenario sc = build_scenario(config_for(alpha));
    return classify(sc.initial, sc.model).verdict == Verdict::FiniteTimeBreakdown;
  };
  double lo = 0.2, hi = 1.2;
  REQUIRE_FALSE(is_breakdown(lo));
  REQUIRE(is_breakdown(hi));
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (is_breakdown(mid) ? hi : lo) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("config roundtrip reproduces the initial arrays bit for bit") {
  const Scenario a = build_scenario(stock_scenario_config("g2-sub"));
  const Scenario b = build_scenario(scenario_to_json(a));
  REQUIRE(a.initial.size() == b.initial.size());
  for (std::size_t i = 0; i < a.initial.size(); ++i) {
    CHECK(a.initial.rho[i] == b.initial.rho[i]);
    CHECK(a.initial.u[i] == b.initial.u[i]);
  }
  CHECK(scenario_to_json(a) == scenario_to_json(b));
}

TEST_CASE("custom preset resamples CSV initial data") {
  const std::string path = std::filesystem::temp_directory_path() / "eplab_custom.csv";
  {
    std::ofstream f(path);
    f << "x,rho0,u0\n";
    for (int i = 0; i <= 100; ++i) {
      const double x = -5.0 + 0.1 * i;
      f << x << "," << 1.0 + 0.1 * x << "," << 0.25 * x << "\n";
    }
  }
  const std::string cfg = std::string(R"({
    "name": "custom-test",
    "model": {"A": 0.5, "gamma": 1.4, "k": 1.0},
    "grid": {"x_min": -4.0, "x_max": 4.0, "n": 64},
    "initial": {"preset": "custom", "params": {"csv": ")") + path + R"("}},
    "solver": {"t_end": 1.0}
  })";
  const Scenario sc = build_scenario(cfg);
  // linear data resamples exactly
  for (std::size_t i = 0; i < sc.initial.size(); ++i) {
    const double x = sc.grid.center(i);
    CHECK(sc.initial.rho[i] == doctest::Approx(1.0 + 0.1 * x).epsilon(1e-12));
    CHECK(sc.initial.u[i] == doctest::Approx(0.25 * x).epsilon(1e-12));
  }
  std::filesystem::remove(path);
}

TEST_CASE("strictly increasing x is required in custom CSV") {
  const std::string path = std::filesystem::temp_directory_path() / "eplab_bad.csv";
  {
    std::ofstream f(path);
    f << "0.0,1.0,0.0\n0.5,1.0,0.0\n0.5,1.0,0.0\n";
  }
  CHECK_THROWS_AS(read_initial_csv(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("unknown presets and malformed configs are rejected") {
  CHECK_THROWS_AS(build_scenario("{\"grid\": {\"x_min\": 0, \"x_max\": 1, \"n\": 64}, "
                                 "\"initial\": {\"preset\": \"nope\"}}"),
                  UnknownPresetError);
  CHECK_THROWS_AS(build_scenario("not json"), ParseError);
  CHECK_THROWS_AS(build_scenario("{}"), ParseError);
  CHECK_THROWS_AS(stock_scenario_config("missing"), UnknownPresetError);
}

TEST_CASE("pressureless preset demands A = 0") {
  std::string cfg = R"({
    "name": "bad",
    "model": {"A": 0.5, "gamma": 1.0, "k": 0.5},
    "grid": {"x_min": -16.0, "x_max": 16.0, "n": 256},
    "initial": {"preset": "pressureless", "params": {"dip_amp": 1.0}},
    "solver": {"t_end": 1.0}
  })";
  CHECK_THROWS_AS(build_scenario(cfg), UnsupportedParametersError);
}

TEST_CASE("skirts that cannot reach the floor are rejected") {
  // isothermal admissible skirts are long; a tiny domain cannot close them
  std::string cfg = R"({
    "name": "tight",
    "model": {"A": 0.5, "gamma": 1.0, "k": 0.25},
    "grid": {"x_min": -4.0, "x_max": 4.0, "n": 256},
    "initial": {"preset": "gauss-subcritical",
                "params": {"amp": 1.0, "core_w": 1.0, "floor": 0.015, "beta": 0.7}},
    "solver": {"t_end": 1.0}
  })";
  CHECK_THROWS_AS(build_scenario(cfg), UnsupportedParametersError);
}

TEST_CASE("run_scenario end to end on a small pressureless case and artifacts") {
  const std::string cfg = with_n(stock_scenario_config("pressureless-super"), 511);
  const Scenario sc = build_scenario(cfg);
  const RunResult res = run_scenario(sc);
  CHECK(res.report.threshold.verdict == Verdict::FiniteTimeBreakdown);
  CHECK(res.report.riccati.has_value());
  CHECK(res.report.mass_conserved);
  CHECK_FALSE(res.paths.empty());

  const auto out = std::filesystem::temp_directory_path() / "eplab_run_artifacts";
  std::filesystem::remove_all(out);
  write_run_artifacts(out, sc, res, true);
  CHECK(std::filesystem::exists(out / "report.json"));
  CHECK(std::filesystem::exists(out / "scenario.json"));
  CHECK(std::filesystem::exists(out / "snapshots" / "snapshot_0000.csv"));
  CHECK(std::filesystem::exists(out / "paths"));
  // deterministic rebuild: same scenario, same run, same bytes
  const RunResult res2 = run_scenario(sc);
  CHECK(run_report_to_json(sc, res.report) == run_report_to_json(sc, res2.report));
  {
    const std::size_t last = res.sim.snapshots.size() - 1;
    const RiemannFields rf1 = to_riemann(res.sim.snapshots[last], sc.model);
    const RiemannFields rf2 = to_riemann(res2.sim.snapshots[last], sc.model);
    PoissonConfig pc;
    pc.tol_support = 1.0;
    const std::string csv1 =
        snapshot_csv(res.sim.snapshots[last], rf1, field_from_density(res.sim.snapshots[last], pc));
    const std::string csv2 =
        snapshot_csv(res2.sim.snapshots[last], rf2, field_from_density(res2.sim.snapshots[last], pc));
    CHECK(csv1 == csv2);
  }
  std::filesystem::remove_all(out);
}

TEST_CASE("consistency semantics: disagreement exits 2, indeterminate resolves") {
  // force a disagreement honestly: GlobalSmooth data stopped by the step cap
  auto j = nlohmann::ordered_json::parse(stock_scenario_config("pressureless-sub"));
  j["grid"]["n"] = 255;
  j["solver"]["max_steps"] = 5;
  const Scenario sc = build_scenario(j.dump());
  const RunResult res = run_scenario(sc);
  CHECK(res.report.threshold.verdict == Verdict::GlobalSmooth);
  CHECK(res.report.trace.outcome == Outcome::StepLimit);
  CHECK(res.report.consistency == "disagree");
  CHECK(res.report.exit_code == 2);

  auto jw = nlohmann::ordered_json::parse(stock_scenario_config("ex4-wide"));
  jw["grid"]["n"] = 1024;
  jw["solver"]["t_end"] = 1.0;
  const Scenario wide = build_scenario(jw.dump());
  const RunResult wres = run_scenario(wide);
  CHECK(wres.report.threshold.verdict == Verdict::Indeterminate);
  CHECK(wres.report.consistency.rfind("resolved-empirically:", 0) == 0);
  CHECK(wres.report.exit_code == 0);
}

TEST_CASE("snapshot CSV carries the full column set") {
  const Scenario sc = build_scenario(with_n(stock_scenario_config("pressureless-sub"), 255));
  const RiemannFields rf = to_riemann(sc.initial, sc.model);
  PoissonConfig pc;
  pc.tol_support = 1.0;
  const PoissonField pf = field_from_density(sc.initial, pc);
  const std::string csv = snapshot_csv(sc.initial, rf, pf);
  CHECK(csv.rfind("x,rho,u,R,S,r,s,X,Y,phi_x\n", 0) == 0);
  const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == sc.initial.size() + 1);
}
