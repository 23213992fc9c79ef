#pragma once

#include <utility>

namespace hylab::freegas {

/// Complete Fermi-Dirac integral F_s(x) = (1/Gamma(s+1)) int_0^inf t^s/(1+e^{t-x}) dt,
/// equal to -Li_{s+1}(-e^x). Throws range-error for |x| > 700 unless
/// `asymptotic_fallback` allows the Boltzmann or Sommerfeld limit there.
double fermi_dirac_F(double s, double x, bool asymptotic_fallback = false);

struct ThermoState {
  double beta = 1.0;
  double mu = 0.0;
  int q = 2;

  double fugacity() const;
  void validate() const;
};

/// P0 through F_{3/2}.
double pressure0(const ThermoState& st);
/// P0 by radial quadrature of ln(1 + z e^{-beta r^2}); independent of fermi_dirac_F.
double pressure0_quadrature(const ThermoState& st);
double density0(const ThermoState& st);
double density0_dmu(const ThermoState& st);

/// Unique positive root of t + kappa t^{3/2} = mu.
double solve_mu_tilde(double mu, double kappa, double tol = 1e-14);

/// Binary entropy s(t) = -t ln t - (1-t) ln(1-t) with 0 ln 0 = 0.
double binary_entropy(double t);
/// s(t, t0) = t ln(t/t0) + (1-t) ln((1-t)/(1-t0)); t0 must lie in (0, 1).
double binary_relative_entropy(double t, double t0);
std::pair<double, double> entropy_pair(double t, double t0);

}  // namespace hylab::freegas
