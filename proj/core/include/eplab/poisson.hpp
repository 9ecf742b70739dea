#ifndef EPLAB_POISSON_HPP
#define EPLAB_POISSON_HPP

#include <vector>

#include "eplab/gas.hpp"
#include "eplab/grid.hpp"

namespace eplab {

/// Electric field data derived from the density.
///
/// phi_x holds the half-difference primitive
///     H(x) = (1/2) (int_{-inf}^{x} rho - int_{x}^{inf} rho),
/// computed with midpoint cumulative sums to cell centers. H is
/// nondecreasing, satisfies d/dx H = rho and |H| <= E0/2, and tends to
/// -E0/2 / +E0/2 at the left/right boundary for interior-supported density.
///
/// The potential of the system solves -phi_xx = rho, whose derivative is
/// -H up to a constant; the momentum source -k rho phi_x therefore equals
/// +k rho H. momentum_source() returns that source.
struct PoissonField {
  std::vector<double> phi_x;  // half-difference primitive H
  double E0 = 0.0;            // total charge
  double boundary_mass_fraction = 0.0;  // mass in the outermost cells / E0
  bool support_ok = true;     // boundary_mass_fraction <= tol_support
};

struct PoissonConfig {
  double tol_support = 1e-8;  // warn threshold for boundary mass fraction
  double max_charge = 1e6;    // UnboundedChargeError above this
  std::size_t boundary_cells = 2;  // cells per side counted as "boundary"
};

/// Total charge: midpoint-rule integral of rho over the grid.
double total_charge(const FlowField& field);

/// Half-difference field from the density. Sets support_ok = false (and the
/// caller may warn) when the density does not effectively vanish near the
/// domain boundaries.
PoissonField field_from_density(const FlowField& field, const PoissonConfig& cfg = {});

/// Momentum-equation source per cell: -k rho phi_x evaluated with the
/// potential solving -phi_xx = rho, i.e. +k rho H. The mass equation has
/// zero source.
std::vector<double> momentum_source(const FlowField& field, const PoissonField& pf,
                                    const GasModel& model);

}  // namespace eplab

#endif  // EPLAB_POISSON_HPP
