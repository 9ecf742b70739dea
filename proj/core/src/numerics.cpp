#include "eplab/numerics.hpp"

#include <algorithm>
#include <cstdint>

namespace eplab {

std::vector<double> derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  const double inv2dx = 1.0 / (2.0 * dx);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2dx;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2dx;
  return d;
}

std::vector<double> cumulative_midpoint(std::span<const double> f, double dx) {
  std::vector<double> out(f.size(), 0.0);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = static_cast<double>(acc + 0.5L * f[i] * dx);
    acc += static_cast<long double>(f[i]) * dx;
  }
  return out;
}

double integrate(std::span<const double> f, double dx) {
  long double acc = 0.0L;
  for (double v : f) acc += v;
  return static_cast<double>(acc * dx);
}

double interp_cell_centered(std::span<const double> f, double x_min, double dx, double x) {
  const std::size_t n = f.size();
  const double s = (x - x_min) / dx - 0.5;
  if (s <= 0.0) return f[0];
  if (s >= static_cast<double>(n - 1)) return f[n - 1];
  const auto i = static_cast<std::size_t>(s);
  const double w = s - static_cast<double>(i);
  return f[i] * (1.0 - w) + f[i + 1] * w;
}

}  // namespace eplab
