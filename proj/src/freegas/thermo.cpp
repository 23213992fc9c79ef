#include <algorithm>
#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/freegas.hpp"

namespace hylab::freegas {

double ThermoState::fugacity() const { return std::exp(beta * mu); }

void ThermoState::validate() const {
  require(std::isfinite(beta) && beta > 0.0, ErrorKind::InvalidInput, "beta must be positive");
  require(std::isfinite(mu), ErrorKind::InvalidInput, "mu must be finite");
  require(q >= 1, ErrorKind::InvalidInput, "spin multiplicity q must be at least 1");
}

namespace {

double thermal_factor(const ThermoState& st) { return std::pow(4.0 * pi * st.beta, -1.5); }

}  // namespace

double pressure0(const ThermoState& st) {
  st.validate();
  return st.q / st.beta * thermal_factor(st) * fermi_dirac_F(1.5, st.beta * st.mu);
}

double pressure0_quadrature(const ThermoState& st) {
  st.validate();
  // Integrate in y = sqrt(beta) r, where the integrand is y^2 ln(1 + e^{x - y^2}).
  const double x = st.beta * st.mu;
  static const GaussRule rule = gauss_legendre(24);
  auto integrand = [x](double y) { return y * y * log1p_exp(x - y * y); };
  const double edge = std::sqrt(std::max(x, 0.0));
  const double top = std::sqrt(std::max(x, 0.0) + 80.0);
  double total = 0.0;
  if (edge > 0.0) total += integrate_panels(integrand, 0.0, edge, 32, rule);
  total += integrate_panels(integrand, edge, top, 64, rule);
  require(std::isfinite(total), ErrorKind::AccuracyFailure, "pressure quadrature failed");
  const double radial = total / std::pow(st.beta, 1.5);
  return st.q / (std::pow(2.0 * pi, 3) * st.beta) * 4.0 * pi * radial;
}

double density0(const ThermoState& st) {
  st.validate();
  return st.q * thermal_factor(st) * fermi_dirac_F(0.5, st.beta * st.mu);
}

double density0_dmu(const ThermoState& st) {
  st.validate();
  return st.q * st.beta * thermal_factor(st) * fermi_dirac_F(-0.5, st.beta * st.mu);
}

double solve_mu_tilde(double mu, double kappa, double tol) {
  require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidInput, "mu must be positive");
  require(kappa >= 0.0 && std::isfinite(kappa), ErrorKind::InvalidInput, "kappa must be nonnegative");
  require(tol > 0.0, ErrorKind::InvalidInput, "tolerance must be positive");
  if (kappa == 0.0) return mu;
  auto g = [&](double t) { return t + kappa * t * std::sqrt(t) - mu; };
  double lo = 0.0, hi = mu;
  require(g(lo) < 0.0 && g(hi) >= 0.0, ErrorKind::SolverFailure, "no sign change for mu tilde");
  double t = mu / (1.0 + kappa * std::sqrt(mu));
  for (int it = 0; it < 200; ++it) {
    const double gt = g(t);
    if (gt == 0.0) return t;
    if (gt < 0.0) lo = t; else hi = t;
    const double dg = 1.0 + 1.5 * kappa * std::sqrt(t);
    double next = t - gt / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-17 * mu || hi - lo <= 4e-16 * mu) {
      t = next;
      break;
    }
    t = next;
  }
  require(std::abs(g(t)) <= std::max(tol, 8e-16 * mu), ErrorKind::SolverFailure,
          "mu tilde iteration did not converge");
  return t;
}

double binary_entropy(double t) {
  require(t >= 0.0 && t <= 1.0, ErrorKind::InvalidInput, "t must lie in [0, 1]");
  double s = 0.0;
  if (t > 0.0) s -= t * std::log(t);
  if (t < 1.0) s -= (1.0 - t) * std::log1p(-t);
  return s;
}

double binary_relative_entropy(double t, double t0) {
  require(t >= 0.0 && t <= 1.0, ErrorKind::InvalidInput, "t must lie in [0, 1]");
  require(t0 > 0.0 && t0 < 1.0, ErrorKind::InvalidInput, "t0 must lie strictly inside (0, 1)");
  double s = 0.0;
  if (t > 0.0) s += t * std::log(t / t0);
  if (t < 1.0) s += (1.0 - t) * std::log((1.0 - t) / (1.0 - t0));
  return s;
}

std::pair<double, double> entropy_pair(double t, double t0) {
  return {binary_entropy(t), binary_relative_entropy(t, t0)};
}

}  // namespace hylab::freegas
