#ifndef EPLAB_SCENARIO_HPP
#define EPLAB_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "eplab/characteristics.hpp"
#include "eplab/gas.hpp"
#include "eplab/grid.hpp"
#include "eplab/solver.hpp"
#include "eplab/threshold.hpp"

namespace eplab {

/// A fully materialized run setup: model, grid, sampled initial arrays,
/// solver configuration and characteristic seed points. config_json is the
/// resolved configuration (all defaults filled in); rebuilding from it
/// reproduces the initial arrays bit for bit.
struct Scenario {
  std::string name;
  GasModel model;
  Grid1D grid;
  FlowField initial;
  SolverConfig solver;
  std::vector<double> seeds;
  std::string config_json;
};

/// Builds a scenario from a JSON configuration with sections
/// {name, model, grid, initial, solver, seeds}. initial.preset selects one of
/// "gauss-subcritical", "paper-ex4", "pressureless", "custom".
Scenario build_scenario(const std::string& config_json);

/// The resolved configuration of a scenario (identical to config_json).
std::string scenario_to_json(const Scenario& sc);

/// Built-in named scenario configurations.
std::vector<std::string> stock_scenario_names();
std::string stock_scenario_config(const std::string& name);

/// Per-path verification summary.
struct PathSummary {
  CharFamily family = CharFamily::Lambda;
  double x0 = 0.0;
  PathEnd end = PathEnd::ReachedEnd;
  std::size_t n_points = 0;
  double min_value = 0.0;  // of the path's own-family slope
  double max_value = 0.0;
  MonotonicityReport buffer;
  MonotonicityReport trap;
};

/// Riccati bound details attached when the classifier found a breakdown point.
struct RiccatiSummary {
  CharFamily family = CharFamily::Lambda;
  double x0 = 0.0;
  double X0 = 0.0;
  double Y1 = 0.0;
  double rho0 = 0.0;
  double t_c_bound = 0.0;
};

struct RunReport {
  ThresholdReport threshold;
  SimulationTrace trace;
  std::vector<PathSummary> paths;
  std::optional<RiccatiSummary> riccati;
  bool mass_conserved = true;
  bool apriori_all_ok = true;
  std::string consistency;  // "agree", "disagree", "resolved-empirically: ..."
  int exit_code = 0;        // 0 agree/resolved, 2 disagreement
};

/// Everything a run produced, for report writing and further verification.
struct RunResult {
  RunReport report;
  SimRun sim;
  std::vector<CharPath> paths;
  std::optional<RiccatiBound> riccati_bound;
};

/// classify -> simulate -> trace & verify. Pure computation; writes nothing.
RunResult run_scenario(const Scenario& sc);

/// JSON form of a run report (threshold report, trace arrays, path
/// summaries, consistency).
std::string run_report_to_json(const Scenario& sc, const RunReport& rep);

/// Writes report.json, snapshots/snapshot_NNNN.csv and paths/NNN_<family>.csv
/// under out_dir. Creates directories as needed.
void write_run_artifacts(const std::string& out_dir, const Scenario& sc, const RunResult& res,
                         bool write_snapshots = true);

}  // namespace eplab

#endif  // EPLAB_SCENARIO_HPP
