#ifndef EPLAB_NUMERICS_HPP
#define EPLAB_NUMERICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace eplab {

/// Second-order spatial derivative on a uniform grid: centered in the
/// interior, one-sided three-point stencils at the two boundary cells.
std::vector<double> derivative(std::span<const double> f, double dx);

/// Midpoint cumulative integral evaluated at cell centers:
/// out[i] = dx * (sum_{j<i} f[j] + f[i]/2).
std::vector<double> cumulative_midpoint(std::span<const double> f, double dx);

/// Midpoint-rule integral dx * sum f[i], accumulated in extended precision.
double integrate(std::span<const double> f, double dx);

/// Linear interpolation of samples f on grid centers x_min + (i+1/2) dx.
/// Clamps to the first/last cell value outside the sampled range.
double interp_cell_centered(std::span<const double> f, double x_min, double dx, double x);

/// Deterministic xorshift-based generator for property tests and sweeps.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform integer in [0, m).
  std::size_t index(std::size_t m) { return static_cast<std::size_t>(next() % m); }

 private:
  std::uint64_t state_;
};

}  // namespace eplab

#endif  // EPLAB_NUMERICS_HPP
