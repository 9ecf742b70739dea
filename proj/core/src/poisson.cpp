#include "eplab/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "eplab/errors.hpp"
#include "eplab/numerics.hpp"

namespace eplab {

double total_charge(const FlowField& field) {
  return integrate(field.rho, field.grid.dx);
}

PoissonField field_from_density(const FlowField& field, const PoissonConfig& cfg) {
  PoissonField pf;
  const double dx = field.grid.dx;
  const std::size_t n = field.size();

  std::vector<double> cum = cumulative_midpoint(field.rho, dx);
  pf.E0 = cum.back() + 0.5 * field.rho.back() * dx;
  if (!(pf.E0 <= cfg.max_charge))
    throw UnboundedChargeError("field_from_density: total charge " + std::to_string(pf.E0) +
                               " exceeds configured maximum");

  pf.phi_x.resize(n);
  const double half = 0.5 * pf.E0;
  for (std::size_t i = 0; i < n; ++i) pf.phi_x[i] = cum[i] - half;

  if (pf.E0 > 0.0) {
    const std::size_t b = std::min(cfg.boundary_cells, n / 2);
    long double edge = 0.0L;
    for (std::size_t i = 0; i < b; ++i) edge += field.rho[i] + field.rho[n - 1 - i];
    pf.boundary_mass_fraction = static_cast<double>(edge) * dx / pf.E0;
    pf.support_ok = pf.boundary_mass_fraction <= cfg.tol_support;
  }
  return pf;
}

std::vector<double> momentum_source(const FlowField& field, const PoissonField& pf,
                                    const GasModel& model) {
  if (pf.phi_x.size() != field.size())
    throw UnsupportedParametersError("momentum_source: inconsistent array lengths");
  std::vector<double> src(field.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    src[i] = model.k * field.rho[i] * pf.phi_x[i];
  return src;
}

}  // namespace eplab
