#include "eplab/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace eplab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

/// max(r0, s0) and min(r0, s0) pointwise; min equals u0x - G with
/// G = sqrt(A gamma) |rho0x| rho0^((gamma-3)/2), the pressure-gradient term.
void fill_margin_arrays(const FlowField& data, const GasModel& model, const RiemannFields& rf,
                        ThresholdReport& rep) {
  const std::size_t n = data.size();
  const double sqrt2k = std::sqrt(2.0 * model.k);
  rep.margins_iso.resize(n);
  rep.margins_gamma.resize(n);
  rep.margins_breakdown.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double min_rs = std::min(rf.r[i], rf.s[i]);
    const double min_xy = std::min(rf.X[i], rf.Y[i]);
    rep.margins_iso[i] = min_rs + std::sqrt(2.0 * model.k * data.rho[i]);
    rep.margins_gamma[i] = min_xy + rep.K0;
    rep.margins_breakdown[i] = min_xy + sqrt2k;
  }
}

/// Corollary flags, evaluated in Riemann-invariant form:
///   (a)  max(|r0|, |s0|) <= sqrt(2 k rho0) pointwise
///   (b)  min(r0, s0) >= -sqrt(2 k rho0 / (gamma+1)) + c_b * B pointwise,
///        B = max_x { sqrt(2 k rho0), max(r0, s0) },
///        c_b = (1 - 1/sqrt(2)) (gamma-1) / (2 (gamma+1)).
void fill_corollaries(const FlowField& data, const GasModel& model, const RiemannFields& rf,
                      ThresholdReport& rep) {
  const std::size_t n = data.size();
  double B = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    B = std::max(B, std::sqrt(2.0 * model.k * data.rho[i]));
    B = std::max(B, std::max(rf.r[i], rf.s[i]));
  }
  const double c_b = (1.0 - 1.0 / std::sqrt(2.0)) * (model.gamma - 1.0) /
                     (2.0 * (model.gamma + 1.0));
  bool a = true, b = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double cap = std::sqrt(2.0 * model.k * data.rho[i]);
    if (std::max(std::abs(rf.r[i]), std::abs(rf.s[i])) > cap) a = false;
    const double lower = -std::sqrt(2.0 * model.k * data.rho[i] / (model.gamma + 1.0)) + c_b * B;
    if (std::min(rf.r[i], rf.s[i]) < lower) b = false;
    if (!a && !b) break;
  }
  rep.cor_a_holds = a;
  rep.cor_b_holds = b;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::GlobalSmooth: return "GlobalSmooth";
    case Verdict::FiniteTimeBreakdown: return "FiniteTimeBreakdown";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

double compute_M0(const RiemannFields& rf0, const GasModel& model) {
  double m = std::sqrt(2.0 * model.k);
  for (double x : rf0.X) m = std::max(m, x);
  for (double y : rf0.Y) m = std::max(m, y);
  return m;
}

double compute_K0(double M0, const GasModel& model) {
  const double th = model.theta;
  return (-th * M0 + std::sqrt(th * th * M0 * M0 + 8.0 * model.k * (1.0 + th))) /
         (2.0 * (1.0 + th));
}

double buffer_floor(double M, const GasModel& model) {
  return std::sqrt((2.0 * model.k + model.theta * M * M) / (1.0 + model.theta));
}

ThresholdReport classify_isothermal(const FlowField& data, const GasModel& model) {
  if (!model.isothermal())
    throw WrongGammaError("classify_isothermal: gamma must be exactly 1");

  const RiemannFields rf = to_riemann(data, model);
  ThresholdReport rep;
  rep.M0 = compute_M0(rf, model);
  rep.K0 = compute_K0(rep.M0, model);  // = sqrt(2k) for theta = 0
  fill_margin_arrays(data, model, rf, rep);
  fill_corollaries(data, model, rf, rep);

  const std::size_t w = argmin(rep.margins_iso);
  rep.worst_margin = rep.margins_iso[w];
  rep.witness_x = data.grid.center(w);
  // The theorem is an iff with ">=": the equality case is globally smooth.
  rep.verdict = rep.worst_margin >= 0.0 ? Verdict::GlobalSmooth : Verdict::FiniteTimeBreakdown;
  rep.applied_theorem = "sharp isothermal threshold";
  return rep;
}

ThresholdReport classify_gamma(const FlowField& data, const GasModel& model) {
  if (model.isothermal())
    throw WrongGammaError("classify_gamma: gamma must be > 1");

  const RiemannFields rf = to_riemann(data, model);
  ThresholdReport rep;
  rep.M0 = compute_M0(rf, model);
  rep.K0 = compute_K0(rep.M0, model);
  fill_margin_arrays(data, model, rf, rep);
  fill_corollaries(data, model, rf, rep);

  const std::size_t wg = argmin(rep.margins_gamma);
  const std::size_t wb = argmin(rep.margins_breakdown);

  if (rep.margins_breakdown[wb] < 0.0) {
    rep.verdict = Verdict::FiniteTimeBreakdown;
    rep.applied_theorem = "breakdown condition";
    rep.worst_margin = rep.margins_breakdown[wb];
    rep.witness_x = data.grid.center(wb);
  } else if (rep.margins_gamma[wg] >= 0.0) {
    rep.verdict = Verdict::GlobalSmooth;
    rep.applied_theorem = "sufficient threshold";
    rep.worst_margin = rep.margins_gamma[wg];
    rep.witness_x = data.grid.center(wg);
  } else {
    rep.verdict = Verdict::Indeterminate;
    rep.applied_theorem = "none (between sufficient and breakdown thresholds)";
    rep.worst_margin = rep.margins_gamma[wg];
    rep.witness_x = data.grid.center(wg);
  }
  return rep;
}

ThresholdReport classify(const FlowField& data, const GasModel& model) {
  return model.isothermal() ? classify_isothermal(data, model) : classify_gamma(data, model);
}

std::string report_to_json(const ThresholdReport& rep) {
  return report_to_json(rep, nullptr);
}

std::string report_to_json(const ThresholdReport& rep, const Grid1D* grid) {
  ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["M0"] = rep.M0;
  j["K0"] = rep.K0;
  j["worst_margin"] = rep.worst_margin;
  j["witness_x"] = rep.witness_x;
  j["applied_theorem"] = rep.applied_theorem;
  j["corollary_a_holds"] = rep.cor_a_holds;
  j["corollary_b_holds"] = rep.cor_b_holds;
  auto summarize = [&](const std::vector<double>& m) {
    if (m.empty()) return ordered_json();
    const auto it = std::min_element(m.begin(), m.end());
    const auto idx = static_cast<std::size_t>(it - m.begin());
    ordered_json entry{{"min", *it}, {"argmin", idx}};
    if (grid && idx < grid->n) entry["x"] = grid->center(idx);
    return entry;
  };
  j["margins"] = ordered_json{{"iso", summarize(rep.margins_iso)},
                              {"gamma", summarize(rep.margins_gamma)},
                              {"breakdown", summarize(rep.margins_breakdown)}};
  return j.dump(2);
}

}  // namespace eplab
