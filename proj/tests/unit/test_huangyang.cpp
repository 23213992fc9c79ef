#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hylab/common/errors.hpp"
#include "hylab/huangyang.hpp"

using namespace hylab;
using namespace hylab::huangyang;

namespace {

constexpr double pi = std::numbers::pi;
const double closed_form_I1 = 64.0 / 105.0 * pi * pi * pi * (11.0 - 2.0 * std::log(2.0));

}  // namespace

TEST_SUITE("huangyang") {
  TEST_CASE("coefficient closed form") {
    const double q2 = 12.0 / 35.0 * (11.0 - 2.0 * std::log(2.0)) * std::cbrt(3.0) * std::pow(pi, 2.0 / 3.0);
    CHECK(hy_coefficient(2) == doctest::Approx(q2).epsilon(1e-14));
    CHECK(hy_coefficient(1) == 0.0);
    CHECK(hy_coefficient(4) / hy_coefficient(2) == doctest::Approx(std::cbrt(0.5) * 1.5).epsilon(1e-14));
    CHECK_THROWS_AS(hy_coefficient(0), Error);
  }

  TEST_CASE("deterministic integral reproduces the closed form") {
    const IntegralResult r = hy_integral(1.0, 0.0);
    CHECK(r.value == doctest::Approx(closed_form_I1).epsilon(1e-6));
    CHECK(coefficient_from_integral(2, r.value) == doctest::Approx(hy_coefficient(2)).epsilon(1e-6));
  }

  TEST_CASE("Monte Carlo is reproducible and within its error bar") {
    IntegralOptions o;
    o.method = Method::monte_carlo;
    o.samples = 200'000;
    o.budget = 0.05;
    o.seed = 7;
    const IntegralResult a = hy_integral(1.0, 0.0, o);
    const IntegralResult b = hy_integral(1.0, 0.0, o);
    CHECK(a.value == b.value);
    CHECK(std::abs(a.value - closed_form_I1) < 5.0 * a.error_estimate);
    o.exec = Execution::serial;
    CHECK(hy_integral(1.0, 0.0, o).value == doctest::Approx(a.value).epsilon(1e-12));
    o.seed = 8;
    CHECK(hy_integral(1.0, 0.0, o).value != a.value);
  }

  TEST_CASE("regulator weakens the subtraction") {
    const double i0 = hy_integral(1.0, 0.0).value;
    CHECK(hy_integral(1.0, 0.05).value > i0);
  }

  TEST_CASE("ground-state expansion terms") {
    const auto e = energy_density_T0(0.01, 0.5, 2);
    CHECK(e.first_order == doctest::Approx(2.0 * pi * 0.5 * 1e-4));
    CHECK(e.second_order == doctest::Approx(hy_coefficient(2) * 0.25 * std::pow(0.01, 7.0 / 3.0)));
    CHECK_THROWS_AS(energy_density_T0(-1.0, 0.5, 2), Error);
  }

  TEST_CASE("pressure expansion signs") {
    const freegas::ThermoState st{1.0, 0.5, 2};
    const auto p = pressure_expansion(st, 0.3);
    CHECK(p.leading == doctest::Approx(freegas::pressure0(st)));
    CHECK(p.first_order < 0.0);
    CHECK(p.second_order < 0.0);
    CHECK(p.temperature_correction > 0.0);
    const auto d = density_expansion(st, 0.3);
    CHECK(d.first_order < 0.0);
  }

  TEST_CASE("threshold diagnostic recovers the analytic gap") {
    const auto r = threshold_diagnostic(0.3, {1e-2, 1e-3, 1e-4});
    CHECK(r.fitted_gap == doctest::Approx(r.analytic_gap).epsilon(1e-10));
    CHECK(r.below_threshold == (2.0 + 0.6 > 7.0 / 3.0));
    CHECK_THROWS_AS(threshold_diagnostic(0.3, {1e-3, 1e-2}), Error);
  }

  TEST_CASE("constant sums on a small box") {
    const double rho = 0.05;
    const int q = 2;
    const double kF = std::cbrt(6.0 * pi * pi * rho / q);
    const auto ex = lattice::Exponents::from_d(1.0 / 9.0);
    const auto cut = lattice::build_cutoffs({ex, rho, kF * kF});
    const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
    const auto sol = scattering::solve_neumann(v, std::pow(rho, -1.0 / 3.0 + ex.alpha3));
    const double L = 2.0 * pi * 2.0 / kF;
    const double reach = std::max(cut.zeta.outer(), cut.zeta_tilde.outer()) + 2.0 * kF + 1e-9;
    const auto tab = lattice::build_tables(sol, v, L, reach);
    const auto cs = renorm_constant_sums(tab, cut, kF, rho * rho, q, 100'000);
    const auto serial = renorm_constant_sums(tab, cut, kF, rho * rho, q, 100'000, Execution::serial);
    CHECK(cs.C2 == doctest::Approx(serial.C2).epsilon(1e-12));
    CHECK(cs.C3 == doctest::Approx(serial.C3).epsilon(1e-12));
    CHECK(std::abs(cs.cutoff_effect) <= 1e-12 * cs.cutoff_effect_scale);

    // C1 and the W Z sum recomputed over the full table lattice.
    const lattice::MomentumLattice all(L, tab.kmax);
    const double vol = L * L * L;
    const double n0 = static_cast<double>(cs.fermi_count);
    double ve = 0.0, wz = 0.0;
    for (const auto& k : all.modes()) {
      ve += tab.vhat(k) * tab.eta(k);
      if (k.norm2() == 0) continue;
      const double k2 = tab.unit() * tab.unit() * k.norm2();
      wz += tab.W(k) * (tab.W(k) - vol * k2 * tab.eta(k)) / k2;
    }
    CHECK(cs.C1 == doctest::Approx((tab.vhat(lattice::IntVec{}) + ve) / (2 * vol) * 2.0 * n0 * n0 / vol).epsilon(1e-10));
    CHECK(cs.wz_sum == doctest::Approx(2.0 * n0 * n0 * wz / (vol * vol * vol)).epsilon(1e-10));

    CHECK_THROWS_AS(renorm_constant_sums(tab, cut, kF, rho * rho, q, 10), Error);
    const auto short_tab = lattice::build_tables(sol, v, L, reach - 1.0);
    CHECK_THROWS_AS(renorm_constant_sums(short_tab, cut, kF, rho * rho, q), Error);
  }
}
