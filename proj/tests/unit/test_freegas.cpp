#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "doctest.h"
#include "hylab/common/errors.hpp"
#include "hylab/freegas.hpp"

using namespace hylab;
using namespace hylab::freegas;

namespace {

constexpr double pi = std::numbers::pi;

double fd_quadrature(double s, double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double t) { return std::pow(t, s) / (std::exp(t - x) + 1.0); };
  return integrator.integrate(f) / std::tgamma(s + 1.0);
}

}  // namespace

TEST_SUITE("freegas") {
  TEST_CASE("Fermi-Dirac integral closed forms") {
    for (double x : {-20.0, -2.0, 0.0, 1.5, 30.0}) {
      CHECK(fermi_dirac_F(0.0, x) == doctest::Approx(std::log1p(std::exp(x))).epsilon(1e-13));
    }
    CHECK(fermi_dirac_F(1.0, 0.0) == doctest::Approx(pi * pi / 12.0).epsilon(1e-13));
    CHECK(fermi_dirac_F(0.5, 0.0) == doctest::Approx((1.0 - std::sqrt(0.5)) * 2.6123753486854883).epsilon(1e-12));
  }

  TEST_CASE("Fermi-Dirac integral agrees with quadrature") {
    for (double s : {-0.5, 0.5, 1.5}) {
      for (double x : {-5.0, -0.3, 0.7, 4.0, 25.0}) {
        CHECK(fermi_dirac_F(s, x) == doctest::Approx(fd_quadrature(s, x)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("range limits") {
    CHECK_THROWS_AS(fermi_dirac_F(0.5, 800.0), Error);
    CHECK(fermi_dirac_F(0.5, 800.0, true) > 0.0);
    CHECK_THROWS_AS(fermi_dirac_F(-1.5, 0.0), Error);
  }

  TEST_CASE("Boltzmann limit of the pressure") {
    const ThermoState st{2.0, -30.0, 2};
    const double boltzmann = st.q * std::exp(st.beta * st.mu) / (st.beta * std::pow(4.0 * pi * st.beta, 1.5));
    CHECK(pressure0(st) == doctest::Approx(boltzmann).epsilon(1e-12));
  }

  TEST_CASE("two pressure routes agree") {
    for (double mu : {-1.0, 0.0, 2.0, 10.0}) {
      const ThermoState st{0.7, mu, 3};
      CHECK(pressure0(st) == doctest::Approx(pressure0_quadrature(st)).epsilon(1e-10));
    }
  }

  TEST_CASE("density derivative matches finite differences") {
    const ThermoState st{1.3, 0.8, 2};
    const double h = 1e-4;
    const double fd = (density0({1.3, 0.8 + h, 2}) - density0({1.3, 0.8 - h, 2})) / (2 * h);
    CHECK(density0_dmu(st) == doctest::Approx(fd).epsilon(1e-7));
  }

  TEST_CASE("zero temperature limit of the density") {
    const double mu = 1.0;
    const ThermoState st{500.0, mu, 2};
    CHECK(density0(st) == doctest::Approx(2.0 / (6.0 * pi * pi) * std::pow(mu, 1.5)).epsilon(1e-5));
  }

  TEST_CASE("mu tilde root") {
    CHECK(solve_mu_tilde(2.0, 0.0) == 2.0);
    const double t = solve_mu_tilde(3.0, 0.5);
    CHECK(t + 0.5 * std::pow(t, 1.5) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(solve_mu_tilde(-1.0, 0.1), Error);
    CHECK_THROWS_AS(solve_mu_tilde(1.0, -0.1), Error);
  }

  TEST_CASE("binary entropies") {
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_relative_entropy(0.3, 0.3) == doctest::Approx(0.0));
    CHECK(binary_relative_entropy(0.0, 0.5) == doctest::Approx(std::log(2.0)));
    CHECK(binary_relative_entropy(0.9, 0.1) > 0.0);
    CHECK_THROWS_AS(binary_relative_entropy(0.5, 0.0), Error);
    CHECK_THROWS_AS(ThermoState({-1.0, 0.0, 2}).validate(), Error);
  }
}
