#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hylab/common/execution.hpp"
#include "hylab/freegas.hpp"
#include "hylab/lattice.hpp"

namespace hylab::huangyang {

enum class Method { deterministic, monte_carlo };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct IntegralOptions {
  Method method = Method::deterministic;
  std::uint64_t samples = 2'000'000;  // Monte Carlo only
  std::uint64_t seed = 20240917;      // Monte Carlo only
  double tol = 1e-6;                  // relative tolerance of the nested quadrature
  double budget = 1e-2;               // largest acceptable relative error estimate
  Execution exec = Execution::parallel;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  Method method = Method::deterministic;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
};

/// I(kF) = int_{|p|,|q|<kF} int_{R^3} (1/|k|^2 - chi/(|k|^2 + k.(q-p) + eps0)) dk dp dq,
/// chi the indicator of p-k and q+k outside the Fermi ball.
IntegralResult hy_integral(double kF, double epsilon0, const IntegralOptions& opts = {});

/// Second-order coefficient implied by I(1) for spin multiplicity q, obtained by
/// writing (4 pi)^2/(2 pi)^9 q(q-1) kF^7 I(1) as c a0^2 rho^{7/3}, rho = q kF^3/(6 pi^2).
double coefficient_from_integral(int q, double I1);

/// (12/35)(11 - 2 ln 2) 3^{1/3} pi^{2/3} 2^{4/3} q^{-1/3} (1 - 1/q).
double hy_coefficient(int q);

struct ExpansionResult {
  double leading = 0.0;
  double first_order = 0.0;
  double second_order = 0.0;
  double temperature_correction = 0.0;
  std::string remainder_order;

  double total() const { return leading + first_order + second_order + temperature_correction; }
};

ExpansionResult energy_density_T0(double rho, double a0, int q);
ExpansionResult pressure_expansion(const freegas::ThermoState& st, double a0);
ExpansionResult density_expansion(const freegas::ThermoState& st, double a0);

struct ThresholdReport {
  double alpha1 = 0.0;
  std::vector<double> rho0;
  std::vector<double> hy_order;       // rho0^{7/3}
  std::vector<double> thermal_order;  // rho0^{2 + 2 alpha1}
  double analytic_gap = 0.0;
  double fitted_gap = 0.0;
  bool below_threshold = false;
};

ThresholdReport threshold_diagnostic(double alpha1, const std::vector<double>& rho0_grid);

/// Lattice sums per unit volume (each raw sum divided by L^3).
struct ConstantSums {
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  /// sum eta_k^2 k.(q-p) phi+ zeta- over k and p, q in B_F; odd under p <-> q.
  double cutoff_effect = 0.0;
  double cutoff_effect_scale = 0.0;  // same sum with absolute values
  /// The same sum with p-k, q+k outside B_F also imposed. It equals cutoff_effect
  /// only once phi+ vanishes below 2 kF, which needs a very small rho0.
  double cutoff_effect_excluded = 0.0;
  /// sum_{sigma != nu, k != 0, p, q} W_k Z_k / (L^6 |k|^2), Z_k = W_k - L^3 |k|^2 eta_k.
  double wz_sum = 0.0;
  double volume = 0.0;
  std::int64_t fermi_count = 0;
  std::size_t k_modes = 0;
};

/// The finite-volume constant terms C1, C2, C3 on the lattice of `tab`.
ConstantSums renorm_constant_sums(const lattice::CoefficientTable& tab,
                                  const lattice::Cutoffs& cut, double kF, double epsilon0, int q,
                                  std::size_t mode_budget = 200'000,
                                  Execution exec = Execution::parallel);

}  // namespace hylab::huangyang
