#ifndef EPLAB_THRESHOLD_HPP
#define EPLAB_THRESHOLD_HPP

#include <string>
#include <vector>

#include "eplab/gas.hpp"
#include "eplab/grid.hpp"

namespace eplab {

enum class Verdict { GlobalSmooth, FiniteTimeBreakdown, Indeterminate };

std::string to_string(Verdict v);

/// Classification of initial data against the critical-threshold conditions.
///
/// Scaled per-cell margins (positive = condition satisfied):
///   margins_iso[i]       = min(r0, s0)[i] + sqrt(2 k rho0[i])   (gamma = 1 branch)
///   margins_gamma[i]     = min(X0, Y0)[i] + K0                  (sufficient condition)
///   margins_breakdown[i] = min(X0, Y0)[i] + sqrt(2k)            (breakdown condition)
///
/// For gamma = 1 the condition is an iff: the verdict is GlobalSmooth exactly
/// when margins_iso >= 0 everywhere, else FiniteTimeBreakdown. For gamma > 1
/// the sufficient bound -K0 and the breakdown bound -sqrt(2k) do not meet,
/// and data falling in the gap is reported Indeterminate.
struct ThresholdReport {
  Verdict verdict = Verdict::Indeterminate;
  double M0 = 0.0;
  double K0 = 0.0;
  std::vector<double> margins_iso;
  std::vector<double> margins_gamma;
  std::vector<double> margins_breakdown;
  double worst_margin = 0.0;     // minimum of the governing margin array
  double witness_x = 0.0;        // location of the worst margin
  std::string applied_theorem;   // which result produced the verdict
  bool cor_a_holds = false;      // simpler sufficient condition (two-sided bound)
  bool cor_b_holds = false;      // coarser closed-form sufficient condition
};

/// M0 = max over x of { sqrt(2k), X0(x), Y0(x) }.
double compute_M0(const RiemannFields& rf0, const GasModel& model);

/// Positive root of k - ((1+theta)/2) K^2 - (theta/2) M0 K = 0:
/// K0 = (-theta M0 + sqrt(theta^2 M0^2 + 8 k (1+theta))) / (2 (1+theta)).
/// Collapses to sqrt(2k) for theta = 0 and to sqrt(2k)/(1+theta) at
/// M0 = sqrt(2k).
double compute_K0(double M0, const GasModel& model);

/// Largest root C+(M) = sqrt((2k + theta M^2)/(1+theta)) of the buffer-zone
/// quadratic; positive slopes strictly decrease on (C+(M), M).
double buffer_floor(double M, const GasModel& model);

/// Sharp iff-classifier for gamma == 1. Throws WrongGammaError otherwise.
ThresholdReport classify_isothermal(const FlowField& data, const GasModel& model);

/// Three-way classifier for gamma > 1. Throws WrongGammaError for gamma == 1.
ThresholdReport classify_gamma(const FlowField& data, const GasModel& model);

/// Dispatch on the model's branch.
ThresholdReport classify(const FlowField& data, const GasModel& model);

/// JSON form of the report: verdict, M0, K0, worst margins with locations,
/// applied_theorem, corollary flags. Passing the grid adds the x position of
/// each margin minimum.
std::string report_to_json(const ThresholdReport& rep);
std::string report_to_json(const ThresholdReport& rep, const Grid1D* grid);

}  // namespace eplab

#endif  // EPLAB_THRESHOLD_HPP
