#include <algorithm>
#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/lattice.hpp"

namespace hylab::lattice {

namespace {

const GaussRule& rule20() {
  static const GaussRule rule = gauss_legendre(20);
  return rule;
}

// n^2 = 4^a (8b + 7) has no representation as a sum of three squares.
bool is_three_square_sum(std::int64_t n2) {
  if (n2 == 0) return true;
  while (n2 % 4 == 0) n2 /= 4;
  return n2 % 8 != 7;
}

std::int64_t n2_limit(double radius) {
  return static_cast<std::int64_t>(std::floor(radius * radius * (1.0 + 1e-12)));
}

double table_at(const std::vector<double>& table, std::int64_t n2) {
  require(n2 < static_cast<std::int64_t>(table.size()), ErrorKind::InvalidInput,
          "momentum outside the coefficient table");
  return table[static_cast<std::size_t>(n2)];
}

}  // namespace

double vhat(const scattering::RadialPotential& v, double k) {
  if (v.is_zero()) return 0.0;
  k = std::abs(k);
  auto integrand = [&](double r) { return v(r) * r * r * sinc(k * r); };
  double total = 0.0;
  if (v.kind() == scattering::PotentialKind::Tabulated) {
    const auto& radii = v.table_radii();
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
      const int panels = 1 + static_cast<int>(std::ceil(k * (radii[i + 1] - radii[i])));
      total += integrate_panels(integrand, radii[i], radii[i + 1], panels, rule20());
    }
  } else {
    const double rv = v.support_radius();
    const int panels = 16 + static_cast<int>(std::ceil(k * rv));
    // Integrate up to the left limit at R_v; the square-well jump sits on the endpoint.
    total = integrate_panels(integrand, 0.0, rv, panels, rule20());
  }
  require(std::isfinite(total), ErrorKind::AccuracyFailure, "vhat quadrature failed");
  return 4.0 * pi * total;
}

double chi_hat(double R, double p) {
  const double x = std::abs(p) * R;
  const double r3 = 4.0 * pi * R * R * R;
  if (x < 0.05) {
    const double x2 = x * x;
    return r3 * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0);
  }
  return r3 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

double CoefficientTable::eta(const IntVec& n) const { return table_at(eta_radial, n.norm2()); }
double CoefficientTable::W(const IntVec& n) const { return table_at(W_radial, n.norm2()); }
double CoefficientTable::vhat(const IntVec& n) const { return table_at(vhat_radial, n.norm2()); }

CoefficientTable build_tables(const scattering::ScatteringSolution& sol,
                              const scattering::RadialPotential& v, double L, double kmax,
                              Execution exec) {
  require(L > 0.0 && kmax >= 0.0, ErrorKind::InvalidInput, "need L > 0 and kmax >= 0");
  require(sol.ellL < 0.5 * L, ErrorKind::InvalidInput, "ellL must be smaller than L/2");
  CoefficientTable tab;
  tab.L = L;
  tab.kmax = kmax;
  tab.lambda_ell = sol.lambda_ell;
  tab.ellL = sol.ellL;
  const double unit = lattice_unit(L);
  const double rho = kmax / unit;
  require(rho <= 200.0, ErrorKind::ResourceLimit, "coefficient table budget exceeded");
  const std::int64_t n2_max = n2_limit(rho);
  const std::int64_t n2_vhat = n2_limit(3.0 * rho + 1.0);
  tab.eta_radial.assign(static_cast<std::size_t>(n2_max + 1), 0.0);
  tab.W_radial.assign(static_cast<std::size_t>(n2_max + 1), 0.0);
  tab.vhat_radial.assign(static_cast<std::size_t>(n2_vhat + 1), 0.0);
  const double volume = L * L * L;

#pragma omp parallel for schedule(dynamic, 8) if (exec == Execution::parallel)
  for (std::int64_t n2 = 0; n2 <= n2_vhat; ++n2) {
    if (!is_three_square_sum(n2)) continue;
    const double p = unit * std::sqrt(static_cast<double>(n2));
    tab.vhat_radial[static_cast<std::size_t>(n2)] = vhat(v, p);
    if (n2 <= n2_max) {
      const double eta = -4.0 * pi * scattering::w_radial_transform(sol, p) / volume;
      tab.eta_radial[static_cast<std::size_t>(n2)] = eta;
      tab.W_radial[static_cast<std::size_t>(n2)] =
          sol.lambda_ell * (chi_hat(sol.ellL, p) + volume * eta);
    }
  }
  return tab;
}

ResidualReport scattering_residual(const CoefficientTable& tab, double kmax, double p_interior,
                                   Execution exec) {
  const double unit = tab.unit();
  const double rho = kmax / unit;
  const double rho_in = p_interior / unit;
  require(p_interior >= 0.0 && p_interior <= kmax, ErrorKind::InvalidInput,
          "interior radius must lie inside the summation ball");
  require(n2_limit(2.0 * rho) <= tab.max_n2(), ErrorKind::InvalidInput,
          "insufficient kmax margin: tables must reach twice the summation radius");
  const double reach = 2.0 * rho + rho_in;
  require(n2_limit(reach) <= tab.max_vhat_n2(), ErrorKind::InvalidInput,
          "insufficient vhat margin for the convolution");

  const MomentumLattice outer(tab.L, 2.0 * kmax);
  std::vector<IntVec> q_in, q_shell;
  std::vector<double> eta_in, eta_shell;
  for (const IntVec& q : outer.modes()) {
    if (within(q, rho)) {
      q_in.push_back(q);
      eta_in.push_back(tab.eta(q));
    } else {
      q_shell.push_back(q);
      eta_shell.push_back(tab.eta(q));
    }
  }
  std::vector<IntVec> interior;
  for (const IntVec& p : q_in) {
    if (within(p, rho_in)) interior.push_back(p);
  }

  const double volume = tab.L * tab.L * tab.L;
  std::vector<double> defect(interior.size()), tail(interior.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const IntVec& p = interior[i];
    CompensatedSum conv;
    for (std::size_t j = 0; j < q_in.size(); ++j) {
      conv.add(tab.vhat(p - q_in[j]) * eta_in[j]);
    }
    CompensatedSum shell;
    for (std::size_t j = 0; j < q_shell.size(); ++j) {
      shell.add(std::abs(tab.vhat(p - q_shell[j]) * eta_shell[j]));
    }
    const double p2 = unit * unit * static_cast<double>(p.norm2());
    defect[i] = std::abs(p2 * tab.eta(p) + conv.value() / (2.0 * volume) +
                         tab.vhat(p) / (2.0 * volume) - tab.W(p) / volume);
    tail[i] = shell.value() / (2.0 * volume);
  }
  ResidualReport rep;
  rep.interior_modes = interior.size();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    rep.residual = std::max(rep.residual, defect[i]);
    // With |vhat_k|, |eta_k| <= C |k|^-2 the terms decay like |q|^-4, so the sum over
    // |q| > 2 kmax is at most the shell sum and the whole tail at most twice it.
    rep.truncation_estimate = std::max(rep.truncation_estimate, 2.0 * tail[i]);
  }
  return rep;
}

}  // namespace hylab::lattice
