#ifndef EPLAB_GAS_HPP
#define EPLAB_GAS_HPP

#include <span>
#include <utility>
#include <vector>

#include "eplab/errors.hpp"
#include "eplab/grid.hpp"

namespace eplab {

/// Physical parameters of the gamma-law Euler-Poisson system:
/// pressure p(rho) = A rho^gamma and a Poisson coupling constant k.
/// theta = (gamma - 1)/2 is the exponent the scaled-slope dynamics run on.
struct GasModel {
  double A = 1.0;
  double gamma = 1.0;
  double k = 1.0;
  double theta = 0.0;

  GasModel() = default;

  GasModel(double pressure_amp, double adiabatic_exp, double coupling)
      : A(pressure_amp), gamma(adiabatic_exp), k(coupling), theta((adiabatic_exp - 1.0) / 2.0) {
    if (!(A >= 0.0)) throw UnsupportedParametersError("GasModel: A must be >= 0");
    if (!(gamma >= 1.0)) throw UnsupportedParametersError("GasModel: gamma must be >= 1");
    if (!(k >= 0.0)) throw UnsupportedParametersError("GasModel: k must be >= 0");
  }

  /// The isothermal branch is selected by exact equality; near-isothermal
  /// exponents go through the general gamma > 1 formulas.
  bool isothermal() const { return gamma == 1.0; }
};

/// Per-cell Riemann invariants R, S, their spatial derivatives r, s, the
/// scaled slopes X = r/sqrt(rho), Y = s/sqrt(rho), and the wave speeds
/// lambda = u - c, mu = u + c with c = sqrt(A gamma) rho^((gamma-1)/2).
struct RiemannFields {
  std::vector<double> R, S;
  std::vector<double> r, s;
  std::vector<double> X, Y;
  std::vector<double> lambda, mu;
};

/// sqrt(A gamma) rho^((gamma-1)/2) per cell.
std::vector<double> sound_term(std::span<const double> rho, const GasModel& model);

/// Scalar version of sound_term.
double sound_speed(double rho, const GasModel& model);

/// Riemann invariants of a flow field. Derivatives use the second-order
/// stencils of derivative(); rho must be positive everywhere.
RiemannFields to_riemann(const FlowField& field, const GasModel& model);

/// Inverse transform. For gamma > 1 requires S >= R pointwise and A > 0;
/// S == R maps to the vacuum limit rho = 0, which throws unless a positive
/// rho_floor is supplied, in which case the result is clamped to the floor.
std::pair<std::vector<double>, std::vector<double>> from_riemann(
    std::span<const double> R, std::span<const double> S, const GasModel& model,
    double rho_floor = 0.0);

/// Scalar transforms used by the array versions and by tests.
double riemann_R(double rho, double u, const GasModel& model);
double riemann_S(double rho, double u, const GasModel& model);

}  // namespace eplab

#endif  // EPLAB_GAS_HPP
