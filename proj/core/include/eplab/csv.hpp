#ifndef EPLAB_CSV_HPP
#define EPLAB_CSV_HPP

#include <string>
#include <vector>

#include "eplab/characteristics.hpp"
#include "eplab/gas.hpp"
#include "eplab/grid.hpp"
#include "eplab/poisson.hpp"

namespace eplab {

/// Shortest representation that round-trips a double exactly.
std::string format_double(double v);

/// Snapshot table: x, rho, u, R, S, r, s, X, Y, phi_x.
std::string snapshot_csv(const FlowField& field, const RiemannFields& rf,
                         const PoissonField& pf);

/// Path table: t, x, X, Y, rho and, when a bound is attached, bound.
std::string path_csv(const CharPath& path, const RiccatiBound* bound = nullptr);

void write_text_file(const std::string& path, const std::string& content);

/// Initial data read from CSV columns x, rho0, u0 (header line optional;
/// x strictly increasing).
struct InitialData {
  std::vector<double> x;
  std::vector<double> rho0;
  std::vector<double> u0;
};

InitialData read_initial_csv(const std::string& path);

/// Linear resampling of tabulated initial data onto grid cell centers;
/// values clamp to the table ends outside the tabulated range.
FlowField resample_to_grid(const InitialData& data, const Grid1D& grid);

}  // namespace eplab

#endif  // EPLAB_CSV_HPP
