#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/huangyang.hpp"

namespace hylab::huangyang {

namespace {

double spin_factor(int q) { return 1.0 - 1.0 / q; }

void check_q(int q) { require(q >= 1, ErrorKind::InvalidInput, "q must be at least 1"); }

}  // namespace

double hy_coefficient(int q) {
  check_q(q);
  return 12.0 / 35.0 * (11.0 - 2.0 * std::log(2.0)) * std::cbrt(3.0) * std::cbrt(pi * pi) *
         std::cbrt(16.0) / std::cbrt(static_cast<double>(q)) * spin_factor(q);
}

double coefficient_from_integral(int q, double I1) {
  check_q(q);
  const double prefactor = 16.0 * pi * pi / std::pow(2.0 * pi, 9) * q * (q - 1.0);
  const double rho_unit = q / (6.0 * pi * pi);  // density at kF = 1
  return prefactor * I1 / std::pow(rho_unit, 7.0 / 3.0);
}

ExpansionResult energy_density_T0(double rho, double a0, int q) {
  check_q(q);
  require(rho > 0.0, ErrorKind::InvalidInput, "density must be positive");
  require(a0 >= 0.0, ErrorKind::InvalidInput, "scattering length must be nonnegative");
  ExpansionResult r;
  r.leading = 0.6 * std::pow(6.0 * pi * pi / q, 2.0 / 3.0) * std::pow(rho, 5.0 / 3.0);
  r.first_order = 4.0 * pi * a0 * spin_factor(q) * rho * rho;
  r.second_order = hy_coefficient(q) * a0 * a0 * std::pow(rho, 7.0 / 3.0);
  r.remainder_order = "o(rho^(7/3))";
  return r;
}

ExpansionResult pressure_expansion(const freegas::ThermoState& st, double a0) {
  require(a0 >= 0.0, ErrorKind::InvalidInput, "scattering length must be nonnegative");
  const double rho0 = freegas::density0(st);
  const double drho = freegas::density0_dmu(st);
  const double s = spin_factor(st.q);
  ExpansionResult r;
  r.leading = freegas::pressure0(st);
  r.first_order = -4.0 * pi * a0 * s * rho0 * rho0;
  r.second_order = -hy_coefficient(st.q) * a0 * a0 * std::pow(rho0, 7.0 / 3.0);
  r.temperature_correction = 0.5 * std::pow(8.0 * pi * a0, 2) * s * s * rho0 * rho0 * drho;
  r.remainder_order = "O(rho0^(7/3+d/400))";
  return r;
}

ExpansionResult density_expansion(const freegas::ThermoState& st, double a0) {
  require(a0 >= 0.0, ErrorKind::InvalidInput, "scattering length must be nonnegative");
  const double rho0 = freegas::density0(st);
  ExpansionResult r;
  r.leading = rho0;
  r.first_order = -8.0 * pi * a0 * spin_factor(st.q) * rho0 * freegas::density0_dmu(st);
  r.remainder_order = "O(rho0^(4/3+d/800))";
  return r;
}

ThresholdReport threshold_diagnostic(double alpha1, const std::vector<double>& rho0_grid) {
  require(rho0_grid.size() >= 2, ErrorKind::InvalidInput, "need at least two densities");
  for (std::size_t i = 0; i < rho0_grid.size(); ++i) {
    require(rho0_grid[i] > 0.0, ErrorKind::InvalidInput, "densities must be positive");
    if (i > 0) {
      require(rho0_grid[i] < rho0_grid[i - 1], ErrorKind::InvalidInput,
              "density grid must be decreasing");
    }
  }
  ThresholdReport rep;
  rep.alpha1 = alpha1;
  rep.rho0 = rho0_grid;
  std::vector<double> ratio;
  for (double rho : rho0_grid) {
    rep.hy_order.push_back(std::pow(rho, 7.0 / 3.0));
    rep.thermal_order.push_back(std::pow(rho, 2.0 + 2.0 * alpha1));
    ratio.push_back(rep.thermal_order.back() / rep.hy_order.back());
  }
  rep.analytic_gap = 2.0 + 2.0 * alpha1 - 7.0 / 3.0;
  rep.fitted_gap = fit_power_law(rep.rho0, ratio).exponent;
  rep.below_threshold = rep.analytic_gap > 0.0;
  return rep;
}

}  // namespace hylab::huangyang
