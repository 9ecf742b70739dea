#include <doctest.h>

#include <cmath>

#include "eplab/gas.hpp"
#include "eplab/numerics.hpp"
#include "test_util.hpp"

using namespace eplab;
using eplab::test::make_field;

namespace {

FlowField uniform_field(double rho, double u, std::size_t n = 16) {
  return make_field(0.0, 1.0, n, [=](double) { return rho; }, [=](double) { return u; });
}

}  // namespace

TEST_CASE("GasModel validates parameters and derives theta") {
  const GasModel m(1.0, 2.0, 0.5);
  CHECK(m.theta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(m.isothermal());
  CHECK(GasModel(1.0, 1.0, 1.0).isothermal());
  CHECK_FALSE(GasModel(1.0, 1.0 + 1e-9, 1.0).isothermal());
  CHECK_THROWS_AS(GasModel(-1.0, 1.0, 1.0), UnsupportedParametersError);
  CHECK_THROWS_AS(GasModel(1.0, 0.9, 1.0), UnsupportedParametersError);
  CHECK_THROWS_AS(GasModel(1.0, 1.0, -0.1), UnsupportedParametersError);
}

TEST_CASE("to_riemann closed-form values") {
  SUBCASE("gamma=2, unit density at rest") {
    const GasModel m(1.0, 2.0, 1.0);
    const RiemannFields rf = to_riemann(uniform_field(1.0, 0.0), m);
    const double two_sqrt2 = 2.0 * std::sqrt(2.0);
    CHECK(rf.R[4] == doctest::Approx(-two_sqrt2).epsilon(1e-14));
    CHECK(rf.S[4] == doctest::Approx(two_sqrt2).epsilon(1e-14));
    CHECK(rf.lambda[4] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rf.mu[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("isothermal at unit density: log term vanishes") {
    const GasModel m(1.0, 1.0, 1.0);
    const RiemannFields rf = to_riemann(uniform_field(1.0, 3.0), m);
    CHECK(rf.R[4] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(rf.S[4] == doctest::Approx(3.0).epsilon(1e-15));
  }
  SUBCASE("pressureless: R = S = u and lambda = mu = u") {
    const GasModel m(0.0, 1.4, 1.0);
    const RiemannFields rf = to_riemann(uniform_field(2.5, -1.25), m);
    CHECK(rf.R[4] == -1.25);
    CHECK(rf.S[4] == -1.25);
    CHECK(rf.lambda[4] == -1.25);
    CHECK(rf.mu[4] == -1.25);
  }
}

TEST_CASE("sound_term closed-form values") {
  std::vector<double> rho = {4.0};
  CHECK(sound_term(rho, GasModel(1.0, 3.0, 1.0))[0] ==
        doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(sound_term(rho, GasModel(0.0, 1.4, 1.0))[0] == 0.0);
  std::vector<double> unit = {1.0};
  for (double g : {1.0, 1.4, 2.0, 3.0})
    CHECK(sound_term(unit, GasModel(1.0, g, 1.0))[0] ==
          doctest::Approx(std::sqrt(g)).epsilon(1e-14));
}

TEST_CASE("from_riemann inverts the closed forms") {
  SUBCASE("gamma=2 example") {
    const GasModel m(1.0, 2.0, 1.0);
    const double a = 2.0 * std::sqrt(2.0);
    std::vector<double> R = {-a}, S = {a};
    const auto [rho, u] = from_riemann(R, S, m);
    CHECK(rho[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u[0] == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("isothermal example") {
    const GasModel m(1.0, 1.0, 1.0);
    std::vector<double> R = {3.0}, S = {3.0};
    const auto [rho, u] = from_riemann(R, S, m);
    CHECK(rho[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u[0] == doctest::Approx(3.0).epsilon(1e-15));
  }
  SUBCASE("vacuum limit S == R throws, or clamps at a configured floor") {
    const GasModel m(1.0, 2.0, 1.0);
    std::vector<double> R = {0.7}, S = {0.7};
    CHECK_THROWS_AS(from_riemann(R, S, m), NonPositiveDensityError);
    const auto [rho, u] = from_riemann(R, S, m, 1e-10);
    CHECK(rho[0] == 1e-10);
    CHECK(u[0] == doctest::Approx(0.7));
  }
  SUBCASE("S < R is rejected for gamma > 1") {
    const GasModel m(1.0, 2.0, 1.0);
    std::vector<double> R = {1.0}, S = {0.0};
    CHECK_THROWS_AS(from_riemann(R, S, m), InvalidInvariantOrderError);
  }
  SUBCASE("A = 0 has no inverse") {
    const GasModel m(0.0, 2.0, 1.0);
    std::vector<double> R = {0.0}, S = {1.0};
    CHECK_THROWS_AS(from_riemann(R, S, m), UnsupportedParametersError);
  }
}

TEST_CASE("roundtrip property over randomized states") {
  SplitMix64 rng(20240817);
  const double gammas[] = {1.0, 1.4, 2.0, 3.0};
  const double amps[] = {0.5, 1.0, 2.0};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const GasModel m(amps[rng.index(3)], gammas[rng.index(4)], 1.0);
    const std::size_t n = 16;
    std::vector<double> rho(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
      rho[i] = rng.uniform(0.01, 100.0);
      u[i] = rng.uniform(-10.0, 10.0);
    }
    std::vector<double> R(n), S(n);
    for (std::size_t i = 0; i < n; ++i) {
      R[i] = riemann_R(rho[i], u[i], m);
      S[i] = riemann_S(rho[i], u[i], m);
    }
    const auto [rho2, u2] = from_riemann(R, S, m);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(rho2[i] - rho[i]) / rho[i]);
      worst = std::max(worst, std::abs(u2[i] - u[i]) / std::max(1.0, std::abs(u[i])));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("wave ordering: mu - lambda = 2 sqrt(A gamma) rho^theta > 0") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const GasModel m(rng.uniform(0.1, 3.0), rng.uniform(1.0, 3.0), 1.0);
    const double rho = rng.uniform(0.01, 50.0);
    const FlowField f = uniform_field(rho, rng.uniform(-5.0, 5.0));
    const RiemannFields rf = to_riemann(f, m);
    const double gap = 2.0 * std::sqrt(m.A * m.gamma) * std::pow(rho, m.theta);
    CHECK(rf.mu[3] - rf.lambda[3] == doctest::Approx(gap).epsilon(1e-12));
    CHECK(rf.mu[3] > rf.lambda[3]);
  }
}

TEST_CASE("R <= S pointwise for gamma > 1") {
  SplitMix64 rng(99);
  const GasModel m(0.7, 1.4, 1.0);
  const FlowField f = make_field(-2.0, 2.0, 64,
                                 [&](double) { return rng.uniform(0.05, 20.0); },
                                 [&](double) { return rng.uniform(-4.0, 4.0); });
  const RiemannFields rf = to_riemann(f, m);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(rf.R[i] <= rf.S[i]);
}

TEST_CASE("derivative relation s - r = 2 sqrt(A gamma) rho^((gamma-3)/2) rho_x at 2nd order") {
  const GasModel m(1.0, 1.4, 1.0);
  double prev = 0.0;
  double worst_order = 10.0;
  for (std::size_t n : {256u, 512u, 1024u}) {
    const FlowField f = make_field(
        -3.0, 3.0, n, [](double x) { return 1.0 + 0.5 * std::sin(x); },
        [](double x) { return 0.3 * std::cos(2.0 * x); });
    const RiemannFields rf = to_riemann(f, m);
    const std::vector<double> rhox = derivative(f.rho, f.grid.dx);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double pred = 2.0 * std::sqrt(m.A * m.gamma) *
                          std::pow(f.rho[i], 0.5 * (m.gamma - 3.0)) * rhox[i];
      err = std::max(err, std::abs(rf.s[i] - rf.r[i] - pred));
    }
    if (prev > 0.0) worst_order = std::min(worst_order, std::log2(prev / err));
    prev = err;
  }
  CHECK(worst_order >= 1.9);
}

TEST_CASE("gamma -> 1+ continuity of the wave speeds") {
  const GasModel iso(0.8, 1.0, 1.0);
  const GasModel near(0.8, 1.0 + 1e-9, 1.0);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double rho = rng.uniform(0.05, 20.0);
    const double u = rng.uniform(-3.0, 3.0);
    const double c_iso = sound_speed(rho, iso);
    const double c_near = sound_speed(rho, near);
    CHECK(std::abs((u - c_near) - (u - c_iso)) <= 1e-6);
    CHECK(std::abs((u + c_near) - (u + c_iso)) <= 1e-6);
  }
}

TEST_CASE("to_riemann rejects non-positive density") {
  Grid1D g(0.0, 1.0, 8);
  FlowField f;
  f.grid = g;
  f.rho = std::vector<double>(8, 1.0);
  f.u = std::vector<double>(8, 0.0);
  f.rho[3] = 0.0;
  CHECK_THROWS_AS(to_riemann(f, GasModel(1.0, 2.0, 1.0)), NonPositiveDensityError);
}
