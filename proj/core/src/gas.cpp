#include "eplab/gas.hpp"

#include <cmath>

#include "eplab/numerics.hpp"

namespace eplab {

double sound_speed(double rho, const GasModel& model) {
  if (model.A == 0.0) return 0.0;
  return std::sqrt(model.A * model.gamma) * std::pow(rho, 0.5 * (model.gamma - 1.0));
}

std::vector<double> sound_term(std::span<const double> rho, const GasModel& model) {
  std::vector<double> c(rho.size());
  if (model.A == 0.0) {
    std::fill(c.begin(), c.end(), 0.0);
    return c;
  }
  const double amp = std::sqrt(model.A * model.gamma);
  const double expo = 0.5 * (model.gamma - 1.0);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) throw NonPositiveDensityError("sound_term: rho <= 0");
    c[i] = amp * std::pow(rho[i], expo);
  }
  return c;
}

double riemann_R(double rho, double u, const GasModel& model) {
  if (model.A == 0.0) return u;
  if (model.isothermal()) return u - std::sqrt(model.A) * std::log(rho);
  const double coef = 2.0 * std::sqrt(model.A * model.gamma) / (model.gamma - 1.0);
  return u - coef * std::pow(rho, model.theta);
}

double riemann_S(double rho, double u, const GasModel& model) {
  if (model.A == 0.0) return u;
  if (model.isothermal()) return u + std::sqrt(model.A) * std::log(rho);
  const double coef = 2.0 * std::sqrt(model.A * model.gamma) / (model.gamma - 1.0);
  return u + coef * std::pow(rho, model.theta);
}

RiemannFields to_riemann(const FlowField& field, const GasModel& model) {
  const std::size_t n = field.size();
  RiemannFields rf;
  rf.R.resize(n);
  rf.S.resize(n);
  rf.lambda.resize(n);
  rf.mu.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double rho = field.rho[i];
    if (!(rho > 0.0))
      throw NonPositiveDensityError("to_riemann: rho <= 0 at cell " + std::to_string(i));
    const double u = field.u[i];
    rf.R[i] = riemann_R(rho, u, model);
    rf.S[i] = riemann_S(rho, u, model);
    const double c = sound_speed(rho, model);
    rf.lambda[i] = u - c;
    rf.mu[i] = u + c;
  }

  rf.r = derivative(rf.R, field.grid.dx);
  rf.s = derivative(rf.S, field.grid.dx);

  rf.X.resize(n);
  rf.Y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sq = std::sqrt(field.rho[i]);
    rf.X[i] = rf.r[i] / sq;
    rf.Y[i] = rf.s[i] / sq;
  }
  return rf;
}

std::pair<std::vector<double>, std::vector<double>> from_riemann(
    std::span<const double> R, std::span<const double> S, const GasModel& model,
    double rho_floor) {
  if (R.size() != S.size())
    throw UnsupportedParametersError("from_riemann: R and S must have equal length");
  if (model.A == 0.0)
    throw UnsupportedParametersError("from_riemann: density is not recoverable when A = 0");

  const std::size_t n = R.size();
  std::vector<double> rho(n), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = 0.5 * (R[i] + S[i]);
    const double diff = S[i] - R[i];
    if (model.isothermal()) {
      rho[i] = std::exp(diff / (2.0 * std::sqrt(model.A)));
    } else {
      if (diff < 0.0)
        throw InvalidInvariantOrderError("from_riemann: S < R at cell " + std::to_string(i));
      const double base = (model.gamma - 1.0) * diff / (4.0 * std::sqrt(model.A * model.gamma));
      const double val = std::pow(base, 2.0 / (model.gamma - 1.0));
      if (!(val > 0.0)) {
        if (rho_floor > 0.0) {
          rho[i] = rho_floor;
          continue;
        }
        throw NonPositiveDensityError("from_riemann: vacuum limit S == R at cell " +
                                      std::to_string(i));
      }
      rho[i] = rho_floor > 0.0 ? std::max(val, rho_floor) : val;
    }
  }
  return {std::move(rho), std::move(u)};
}

}  // namespace eplab
