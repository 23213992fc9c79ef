#include <cmath>

#include "doctest.h"
#include "hylab/common/errors.hpp"
#include "hylab/scattering.hpp"

using namespace hylab;
using namespace hylab::scattering;

namespace {

// Neumann ground state of the square well from the matching condition: u = sinh(kappa r)
// inside, u = B sin(k (r - b) + delta) outside, and u'(ell) ell = u(ell).
double square_well_lambda(double V0, double b, double ell) {
  auto defect = [&](double lam) {
    const double kappa = std::sqrt(V0 - lam);
    const double k = std::sqrt(lam);
    const double ui = std::sinh(kappa * b);
    const double dui = kappa * std::cosh(kappa * b);
    // outside: u = ui cos(k s) + dui/k sin(k s), s = r - b
    const double s = ell - b;
    const double u = ui * std::cos(k * s) + dui / k * std::sin(k * s);
    const double du = -ui * k * std::sin(k * s) + dui * std::cos(k * s);
    return du * ell - u;
  };
  double lo = 1e-14, hi = 3.0 / (ell * ell * ell);
  while (defect(lo) * defect(hi) > 0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (defect(lo) * defect(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Zero-energy shooting with a fine midpoint rule for u'' = (v/2) u.
double shoot_a0(const RadialPotential& v, int n) {
  const double R = v.support_radius();
  const double h = R / n;
  double u = 0.0, du = 1.0;
  for (int i = 0; i < n; ++i) {
    const double r = i * h;
    // classical RK4
    auto f = [&](double rr, double uu) { return 0.5 * v(rr) * uu; };
    const double k1u = du, k1d = f(r, u);
    const double k2u = du + 0.5 * h * k1d, k2d = f(r + 0.5 * h, u + 0.5 * h * k1u);
    const double k3u = du + 0.5 * h * k2d, k3d = f(r + 0.5 * h, u + 0.5 * h * k2u);
    const double k4u = du + h * k3d, k4d = f(r + h, u + h * k3u);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    du += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
  }
  return R - u / du;
}

}  // namespace

TEST_SUITE("scattering") {
  TEST_CASE("square well scattering length has the tanh form") {
    for (double V0 : {0.1, 1.0, 9.0, 100.0}) {
      for (double b : {0.5, 1.0, 2.0}) {
        const double g = std::sqrt(V0);
        const double exact = b - std::tanh(g * b) / g;
        CHECK(scattering_length(RadialPotential::square_well(V0, b)) == doctest::Approx(exact).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("zero potential has no scattering") {
    CHECK(scattering_length(RadialPotential::zero()) == 0.0);
  }

  TEST_CASE("smooth bump agrees with independent shooting") {
    const auto v = RadialPotential::gaussian_bump(3.0, 1.2);
    CHECK(v.is_smooth());
    CHECK(scattering_length(v) == doctest::Approx(shoot_a0(v, 20000)).epsilon(1e-7));
  }

  TEST_CASE("scattering length grows with the strength and stays below the range") {
    double prev = 0.0;
    for (double V0 : {0.5, 2.0, 8.0, 32.0, 128.0}) {
      const double a = scattering_length(RadialPotential::square_well(V0, 1.0));
      CHECK(a > prev);
      CHECK(a < 1.0);
      prev = a;
    }
  }

  TEST_CASE("Neumann eigenvalue matches the matching-condition root") {
    for (double ell : {3.0, 10.0, 40.0}) {
      const auto v = RadialPotential::square_well(1.0, 1.0);
      const ScatteringSolution s = solve_neumann(v, ell);
      CHECK(s.lambda_ell == doctest::Approx(square_well_lambda(1.0, 1.0, ell)).epsilon(1e-8));
      CHECK(s.f(ell) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(s.df(ell)) < 1e-8);
    }
  }

  TEST_CASE("solution is positive and w vanishes outside the ball") {
    const auto v = RadialPotential::square_well(4.0, 1.0);
    const ScatteringSolution s = solve_neumann(v, 12.0);
    for (double r : {0.01, 0.5, 1.0, 3.0, 11.9}) {
      CHECK(s.f(r) > 0.0);
      CHECK(s.w(r) == doctest::Approx(1.0 - s.f(r)).epsilon(1e-12));
    }
    CHECK(s.w(13.0) == 0.0);
  }

  TEST_CASE("eigenvalue approaches the asymptotic form") {
    const auto v = RadialPotential::square_well(1.0, 1.0);
    const double a0 = 1.0 - std::tanh(1.0);
    const double e20 = std::abs(solve_neumann(v, 20.0).lambda_ell - lambda_asymptotic(a0, 20.0));
    const double e40 = std::abs(solve_neumann(v, 40.0).lambda_ell - lambda_asymptotic(a0, 40.0));
    CHECK(e40 < e20 / 16.0);
  }

  TEST_CASE("far-field scattering length converges to a0") {
    const auto v = RadialPotential::square_well(1.0, 1.0);
    const double a0 = scattering_length(v);
    CHECK(far_field_scattering_length(solve_neumann(v, 80.0)) == doctest::Approx(a0).epsilon(1e-3));
  }

  TEST_CASE("finite-difference oracle agrees with the shooting solver") {
    const auto v = RadialPotential::square_well(2.0, 1.0);
    const double fd = fd_neumann_eigenvalue_extrapolated(v, 6.0, 6 * 512);
    CHECK(solve_neumann(v, 6.0).lambda_ell == doctest::Approx(fd).epsilon(1e-7));
  }

  TEST_CASE("tabulated potentials") {
    const auto ramp = RadialPotential::tabulated({0.0, 0.5, 1.0}, {4.0, 2.0, 0.0});
    CHECK(scattering_length(ramp) == doctest::Approx(shoot_a0(ramp, 20000)).epsilon(1e-7));
    const auto steep = RadialPotential::tabulated({0.0, 1.0, 1.001}, {2.0, 2.0, 0.0});
    CHECK(scattering_length(steep) == doctest::Approx(1.0 - std::tanh(1.0)).epsilon(1e-3));
  }

  TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(RadialPotential::square_well(-1.0, 1.0), Error);
    CHECK_THROWS_AS(RadialPotential::square_well(1.0, 0.0), Error);
    CHECK_THROWS_AS(parse_potential_kind("lennard-jones"), Error);
    CHECK_THROWS_AS(solve_neumann(RadialPotential::square_well(1.0, 1.0), 1.5), Error);
    CHECK(to_string(parse_potential_kind("square-well")) == "square-well");
  }
}
