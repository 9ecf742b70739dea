#ifndef EPLAB_GRID_HPP
#define EPLAB_GRID_HPP

#include <cstddef>
#include <vector>

#include "eplab/errors.hpp"

namespace eplab {

/// Uniform 1D cell-centered grid on [x_min, x_max] with n cells.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n = 0;
  double dx = 0.0;

  Grid1D() = default;

  Grid1D(double xmin, double xmax, std::size_t cells)
      : x_min(xmin), x_max(xmax), n(cells) {
    if (!(x_min < x_max)) throw UnsupportedParametersError("Grid1D: x_min must be < x_max");
    if (n < 8) throw UnsupportedParametersError("Grid1D: need at least 8 cells");
    dx = (x_max - x_min) / static_cast<double>(n);
  }

  double center(std::size_t i) const {
    return x_min + (static_cast<double>(i) + 0.5) * dx;
  }

  std::vector<double> centers() const {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = center(i);
    return xs;
  }

  bool operator==(const Grid1D&) const = default;
};

/// Grid-sampled (rho, u) at one time level. Immutable snapshot semantics:
/// operations elsewhere take it by const reference and return new values.
/// The container admits rho >= 0 (the Poisson integrals are defined for any
/// nonnegative charge); operations that need strict positivity, such as the
/// Riemann transforms and the solver, raise NonPositiveDensityError.
struct FlowField {
  Grid1D grid;
  std::vector<double> rho;
  std::vector<double> u;
  double t = 0.0;

  FlowField() = default;

  FlowField(Grid1D g, std::vector<double> density, std::vector<double> velocity, double time)
      : grid(g), rho(std::move(density)), u(std::move(velocity)), t(time) {
    if (rho.size() != grid.n || u.size() != grid.n)
      throw UnsupportedParametersError("FlowField: array lengths must equal grid.n");
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (!(rho[i] >= 0.0))
        throw NonPositiveDensityError("FlowField: rho must be nonnegative (cell " +
                                      std::to_string(i) + ")");
    }
  }

  std::size_t size() const { return grid.n; }
};

}  // namespace eplab

#endif  // EPLAB_GRID_HPP
