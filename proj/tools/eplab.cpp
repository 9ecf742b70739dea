// eplab: classify / simulate / verify / run / sweep for the 1D
// Euler-Poisson critical-threshold laboratory.
//
// Exit codes: 0 success or verdict-outcome agreement, 1 usage or I/O error,
// 2 theory-simulation disagreement.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eplab/csv.hpp"
#include "eplab/errors.hpp"
#include "eplab/scenario.hpp"

namespace {

using eplab::Scenario;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  std::string scenario;
  std::string config_path;
  std::string out_dir;
  std::string format = "json";
  std::size_t n_override = 0;
  double cfl_override = 0.0;
  double t_end_override = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario, "Built-in scenario name (see `eplab scenarios`)");
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--format", o.format, "Output format for classify: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--n", o.n_override, "Override grid cell count");
  cmd->add_option("--cfl", o.cfl_override, "Override Courant number");
  cmd->add_option("--t-end", o.t_end_override, "Override final time");
}

std::string load_config(const CommonOpts& o) {
  if (!o.scenario.empty() && !o.config_path.empty())
    throw eplab::ParseError("use either --scenario or --config, not both");
  if (!o.scenario.empty()) return eplab::stock_scenario_config(o.scenario);
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    if (!f) throw eplab::ParseError("cannot open config: " + o.config_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  throw eplab::ParseError("one of --scenario or --config is required");
}

Scenario build_from_opts(const CommonOpts& o) {
  ordered_json j = ordered_json::parse(load_config(o));
  if (o.n_override > 0) j["grid"]["n"] = o.n_override;
  if (o.cfl_override > 0.0) j["solver"]["cfl"] = o.cfl_override;
  if (o.t_end_override > 0.0) j["solver"]["t_end"] = o.t_end_override;
  return eplab::build_scenario(j.dump());
}

std::string default_out(const Scenario& sc) { return "eplab-out/" + sc.name; }

int cmd_scenarios() {
  for (const std::string& name : eplab::stock_scenario_names()) std::cout << name << "\n";
  return 0;
}

int cmd_classify(const CommonOpts& o) {
  const Scenario sc = build_from_opts(o);
  const eplab::ThresholdReport rep = eplab::classify(sc.initial, sc.model);
  if (o.format == "csv") {
    std::string out = "x,margin_iso,margin_gamma,margin_breakdown\n";
    for (std::size_t i = 0; i < sc.initial.size(); ++i) {
      out += eplab::format_double(sc.grid.center(i));
      out += ',';
      out += eplab::format_double(rep.margins_iso[i]);
      out += ',';
      out += eplab::format_double(rep.margins_gamma[i]);
      out += ',';
      out += eplab::format_double(rep.margins_breakdown[i]);
      out += '\n';
    }
    std::cout << out;
  } else {
    std::cout << eplab::report_to_json(rep, &sc.grid) << "\n";
  }
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    eplab::write_text_file(o.out_dir + "/threshold.json",
                           eplab::report_to_json(rep, &sc.grid) + "\n");
  }
  return 0;
}

void print_run_summary(const Scenario& sc, const eplab::RunReport& rep) {
  std::cout << "scenario:    " << sc.name << "\n"
            << "verdict:     " << eplab::to_string(rep.threshold.verdict) << " ("
            << rep.threshold.applied_theorem << ")\n"
            << "outcome:     " << eplab::to_string(rep.trace.outcome);
  if (std::isfinite(rep.trace.t_c_numeric)) std::cout << " at t = " << rep.trace.t_c_numeric;
  std::cout << "\n"
            << "consistency: " << rep.consistency << "\n";
  if (rep.riccati)
    std::cout << "riccati:     t_c_bound = " << rep.riccati->t_c_bound << " (seed x0 = "
              << rep.riccati->x0 << ")\n";
  std::size_t viol = 0;
  for (const auto& p : rep.paths) viol += p.buffer.violations.size() + p.trap.violations.size();
  std::cout << "paths:       " << rep.paths.size() << " traced, " << viol
            << " monotonicity violations\n";
  if (!rep.trace.support_ok)
    std::cout << "warning:     initial density is not interior-supported at the configured "
                 "tolerance\n";
  if (!rep.trace.domain_ok)
    std::cout << "warning:     wall influence entered the diagnostic window before t_end\n";
}

int cmd_simulate(const CommonOpts& o) {
  const Scenario sc = build_from_opts(o);
  eplab::RunResult res;
  res.sim = eplab::simulate(sc.initial, sc.solver, sc.model);
  res.report.threshold = eplab::classify(sc.initial, sc.model);
  res.report.trace = res.sim.trace;
  res.report.consistency = "simulate-only";
  const std::string out = o.out_dir.empty() ? default_out(sc) : o.out_dir;
  eplab::write_run_artifacts(out, sc, res, /*write_snapshots=*/true);
  std::cout << "outcome: " << eplab::to_string(res.sim.trace.outcome) << "  (snapshots: "
            << res.sim.snapshots.size() << ", out: " << out << ")\n";
  return 0;
}

int cmd_verify(const CommonOpts& o, bool write_snapshots, const char* label) {
  const Scenario sc = build_from_opts(o);
  const eplab::RunResult res = eplab::run_scenario(sc);
  const std::string out = o.out_dir.empty() ? default_out(sc) : o.out_dir;
  eplab::write_run_artifacts(out, sc, res, write_snapshots);
  print_run_summary(sc, res.report);
  std::cout << label << " artifacts written to " << out << "\n";
  return res.report.exit_code;
}

int cmd_sweep(const std::string& sweep_path, const std::string& out_root, unsigned jobs) {
  std::ifstream f(sweep_path);
  if (!f) throw eplab::ParseError("cannot open sweep file: " + sweep_path);
  std::ostringstream ss;
  ss << f.rdbuf();
  const ordered_json j = ordered_json::parse(ss.str());
  if (!j.contains("runs") || !j.at("runs").is_array())
    throw eplab::ParseError("sweep file: expected {\"runs\": [...]}");

  std::vector<Scenario> scenarios;
  for (const auto& entry : j.at("runs")) {
    if (entry.is_string())
      scenarios.push_back(eplab::build_scenario(eplab::stock_scenario_config(entry)));
    else
      scenarios.push_back(eplab::build_scenario(entry.dump()));
  }

  std::vector<std::future<int>> futures;
  std::size_t next = 0;
  int worst = 0;
  while (next < scenarios.size() || !futures.empty()) {
    while (next < scenarios.size() && futures.size() < jobs) {
      const Scenario& sc = scenarios[next++];
      futures.push_back(std::async(std::launch::async, [&sc, &out_root]() {
        const eplab::RunResult res = eplab::run_scenario(sc);
        eplab::write_run_artifacts(out_root + "/" + sc.name, sc, res, true);
        std::printf("%-20s %-22s %-16s %s\n", sc.name.c_str(),
                    eplab::to_string(res.report.threshold.verdict).c_str(),
                    eplab::to_string(res.report.trace.outcome).c_str(),
                    res.report.consistency.c_str());
        return res.report.exit_code;
      }));
    }
    worst = std::max(worst, futures.front().get());
    futures.erase(futures.begin());
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D Euler-Poisson critical-threshold laboratory"};
  app.require_subcommand(1);

  CommonOpts o_classify, o_simulate, o_verify, o_run;
  std::string sweep_path, sweep_out = "eplab-out/sweep";
  unsigned sweep_jobs = 2;

  app.add_subcommand("scenarios", "List built-in scenarios");
  add_common(app.add_subcommand("classify", "Evaluate the critical-threshold conditions"),
             o_classify);
  add_common(app.add_subcommand("simulate", "Evolve the system and write snapshots"),
             o_simulate);
  add_common(app.add_subcommand("verify",
                                "Simulate, trace characteristics and check the ODE-level claims"),
             o_verify);
  add_common(app.add_subcommand("run", "classify + simulate + verify, full artifact set"),
             o_run);
  auto* sweep = app.add_subcommand("sweep", "Run several scenarios in parallel");
  sweep->add_option("--config", sweep_path, "Sweep file: {\"runs\": [name-or-config, ...]}")
      ->required();
  sweep->add_option("--out", sweep_out, "Output root directory");
  sweep->add_option("--jobs", sweep_jobs, "Parallel runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("scenarios")) return cmd_scenarios();
    if (app.got_subcommand("classify")) return cmd_classify(o_classify);
    if (app.got_subcommand("simulate")) return cmd_simulate(o_simulate);
    if (app.got_subcommand("verify")) return cmd_verify(o_verify, false, "verify");
    if (app.got_subcommand("run")) return cmd_verify(o_run, true, "run");
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_path, sweep_out, sweep_jobs);
  } catch (const eplab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
