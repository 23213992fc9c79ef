#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hylab/common/errors.hpp"
#include "hylab/lattice.hpp"

using namespace hylab;
using namespace hylab::lattice;

namespace {

constexpr double pi = std::numbers::pi;

std::int64_t brute_count(double R, double L) {
  const double r = R * L / (2.0 * pi);
  const int n = static_cast<int>(std::ceil(r)) + 1;
  std::int64_t c = 0;
  for (int x = -n; x <= n; ++x) {
    for (int y = -n; y <= n; ++y) {
      for (int z = -n; z <= n; ++z) c += double(x * x + y * y + z * z) <= r * r * (1 + 1e-15);
    }
  }
  return c;
}

double square_well_vhat(double V0, double b, double k) {
  if (k == 0.0) return 2.0 * V0 * 4.0 * pi * b * b * b / 3.0;
  return 2.0 * V0 * 4.0 * pi * (std::sin(k * b) - k * b * std::cos(k * b)) / (k * k * k);
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("point count matches enumeration") {
    for (double L : {2.0 * pi, 5.0, 13.7}) {
      for (double R : {0.0, 0.3, 1.0, 2.5, 4.1, 7.0}) {
        CHECK(count_lattice_points(R, L) == brute_count(R, L));
        CHECK(count_lattice_points(R, L, Execution::serial) == count_lattice_points(R, L, Execution::parallel));
      }
    }
  }

  TEST_CASE("shell boundaries are inclusive") {
    CHECK(within(IntVec{1, 1, 0}, std::sqrt(2.0)));
    CHECK(within(IntVec{2, 1, 2}, 3.0));
    CHECK_FALSE(within(IntVec{2, 2, 1}, 2.9999));
    CHECK(count_lattice_points(1.0, 2.0 * pi) == 7);
    CHECK(count_lattice_points(std::sqrt(2.0), 2.0 * pi) == 19);
  }

  TEST_CASE("Fermi ball agrees with the counter") {
    const FermiBall b = fermi_ball(1.3, 17.0);
    CHECK(b.count == count_lattice_points(1.3, 17.0));
    CHECK(static_cast<std::int64_t>(b.modes.size()) == b.count);
  }

  TEST_CASE("budget and argument checks") {
    CHECK_THROWS_AS(count_lattice_points(-1.0, 1.0), Error);
    CHECK_THROWS_AS(count_lattice_points(1e6, 2.0 * pi), Error);
    CHECK_THROWS_AS(MomentumLattice(1000.0, 10.0), Error);
  }

  TEST_CASE("potential transform has the closed form") {
    const auto v = scattering::RadialPotential::square_well(1.5, 0.8);
    for (double k : {0.0, 0.4, 1.7, 6.0}) {
      CHECK(vhat(v, k) == doctest::Approx(square_well_vhat(1.5, 0.8, k)).epsilon(1e-10));
    }
  }

  TEST_CASE("tables are radial and integer keyed") {
    const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
    const auto sol = scattering::solve_neumann(v, 3.0);
    const CoefficientTable tab = build_tables(sol, v, 8.0, 6.0);
    const IntVec n{3, 1, 2};
    for (const IntVec& m : {IntVec{1, 2, 3}, IntVec{-3, 1, -2}, IntVec{2, -3, 1}, -n}) {
      CHECK(tab.eta(m) == tab.eta(n));
      CHECK(tab.W(m) == tab.W(n));
      CHECK(tab.vhat(m) == tab.vhat(n));
    }
    // eta_0 = -L^{-3} int w over the ball
    double s = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
      const double r = 3.0 * (i + 0.5) / N;
      s += 4.0 * pi * r * r * sol.w(r) * 3.0 / N;
    }
    CHECK(tab.eta(IntVec{}) == doctest::Approx(-s / 512.0).epsilon(1e-6));
  }

  TEST_CASE("serial and parallel tables agree") {
    const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
    const auto sol = scattering::solve_neumann(v, 3.0);
    const auto a = build_tables(sol, v, 8.0, 5.0, Execution::serial);
    const auto b = build_tables(sol, v, 8.0, 5.0, Execution::parallel);
    CHECK(a.eta_radial == b.eta_radial);
    CHECK(a.W_radial == b.W_radial);
    CHECK(a.vhat_radial == b.vhat_radial);
  }

  TEST_CASE("discrete scattering residual shrinks under kmax doubling") {
    const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
    const auto sol = scattering::solve_neumann(v, 3.0);
    const auto t1 = build_tables(sol, v, 8.0, 6.0);
    const auto t2 = build_tables(sol, v, 8.0, 12.0);
    const auto r1 = scattering_residual(t1, 3.0, 2.0);
    const auto r2 = scattering_residual(t2, 6.0, 2.0);
    CHECK(r2.residual < r1.residual);
    CHECK(r1.residual <= r1.truncation_estimate);
    CHECK(r1.interior_modes == static_cast<std::size_t>(count_lattice_points(2.0, 8.0)));
  }

  TEST_CASE("smoothstep cutoffs") {
    CHECK(smoothstep5(0.0) == 0.0);
    CHECK(smoothstep5(1.0) == 1.0);
    CHECK(smoothstep5(0.5) == doctest::Approx(0.5));
    const RadialCutoff c(1.0, 2.0);
    CHECK(c.minus(0.5) == 1.0);
    CHECK(c.minus(2.5) == 0.0);
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.05) {
      CHECK(c.minus(r) <= prev);
      CHECK(c.minus(r) + c.plus(r) == doctest::Approx(1.0));
      prev = c.minus(r);
    }
  }

  TEST_CASE("exponent sets") {
    const Exponents e = Exponents::from_d(1.0 / 9.0);
    CHECK(e.d == doctest::Approx(1.0 / 9.0));
    CHECK(e.alpha3 > 0.0);
    const Exponents f = Exponents::from_alpha1(0.25);
    CHECK(f.d == doctest::Approx(1.0 / 12.0));
    CHECK(Exponents::from_alpha1(0.9).d == doctest::Approx(1.0 / 9.0));
    CHECK_THROWS_AS(Exponents::from_alpha1(0.1), Error);
  }

  TEST_CASE("collision energy") {
    const double L = 2.0 * pi;
    CHECK(collision_energy(IntVec{1, 0, 0}, IntVec{0, 1, 0}, IntVec{0, 0, 0}, L) == doctest::Approx(1.0));
    CHECK(collision_energy(IntVec{1, 0, 0}, IntVec{1, 0, 0}, IntVec{-1, 0, 0}, L) == doctest::Approx(3.0));
  }
}
