#include <algorithm>
#include <cmath>
#include <random>

#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/freegas.hpp"
#include "hylab/huangyang.hpp"
#include "hylab/lattice.hpp"

namespace hylab::cli {

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Running maximum of |y|, the envelope of an oscillating error sequence.
std::vector<double> envelope(const std::vector<double>& y) {
  std::vector<double> out(y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = m = std::max(m, std::abs(y[i]));
  return out;
}

}  // namespace

void check_huang_yang_constant(const RunConfig& cfg, Recorder& rec) {
  using namespace huangyang;
  const int q = 2;
  const double target = hy_coefficient(q);
  IntegralOptions det;
  det.exec = cfg.exec;
  const IntegralResult i1 = hy_integral(1.0, 0.0, det);
  rec.check("deterministic_coefficient", "core ground state energy", coefficient_from_integral(q, i1.value),
            target, 1e-3, Semantics::relative,
            "I(1) = " + format_number(i1.value) + " +- " + format_number(i1.error_estimate));

  IntegralOptions mc;
  mc.method = Method::monte_carlo;
  mc.samples = cfg.samples;
  mc.seed = cfg.seed;
  mc.budget = cfg.budget;
  mc.exec = cfg.exec;
  const IntegralResult m = hy_integral(1.0, 0.0, mc);
  rec.check("monte_carlo_coefficient", "core ground state energy", coefficient_from_integral(q, m.value),
            target, 1e-2, Semantics::relative,
            "I(1) = " + format_number(m.value) + " +- " + format_number(m.error_estimate) +
                " with " + std::to_string(m.samples) + " samples");

  const IntegralResult i2 = hy_integral(2.0, 0.0, det);
  rec.check("kF_scaling", "int lim L int", i2.value / i1.value, 128.0, 1e-6, Semantics::relative);
}

void check_q2_identity(const RunConfig&, Recorder& rec) {
  const double a0 = 1.0;
  const double rho = 1.0;
  const auto e = huangyang::energy_density_T0(rho, a0, 2);
  const double lead = 0.6 * std::pow(3.0 * pi * pi, 2.0 / 3.0);
  const double first = 2.0 * pi;
  const double second = 12.0 / 35.0 * (11.0 - 2.0 * std::log(2.0)) * std::cbrt(3.0) * std::pow(pi, 2.0 / 3.0);
  rec.check("kinetic_coefficient", "no1", e.leading, lead, 1e-12, Semantics::relative);
  rec.check("first_order_coefficient", "no1", e.first_order, first, 1e-12, Semantics::relative);
  rec.check("second_order_coefficient", "no1", e.second_order, second, 1e-12, Semantics::relative);
}

void check_scattering(const RunConfig&, Recorder& rec) {
  using namespace scattering;
  const auto v = RadialPotential::square_well(1.0, 1.0);
  const double exact = 1.0 - std::tanh(1.0);
  const double a0 = scattering_length(v);
  rec.check("a0_square_well", "est of lambda_l", a0, exact, 1e-8, Semantics::relative);
  const auto hard = RadialPotential::square_well(400.0, 1.0);
  rec.check("a0_deep_well", "est of lambda_l", scattering_length(hard), 1.0 - std::tanh(20.0) / 20.0,
            1e-8, Semantics::relative);

  const std::vector<double> radii{20.0, 40.0, 80.0, 160.0};
  std::vector<double> lam_res, vf_res;
  Table t;
  t.header = {"ellL", "lambda_ell", "lambda_asymptotic", "int_vf", "int_vf_asymptotic", "residual"};
  for (double R : radii) {
    const ScatteringSolution s = solve_neumann(v, R);
    const auto [vf, w] = integrals_vf_w(s, v);
    const double la = lambda_asymptotic(exact, R);
    const double vfa = 8.0 * pi * exact * (1.0 + 1.5 * exact / R);
    lam_res.push_back(s.lambda_ell - la);
    vf_res.push_back(vf - vfa);
    t.rows.push_back({R, s.lambda_ell, la, vf, vfa, s.residual});
    if (R == 20.0) {
      const double fd = fd_neumann_eigenvalue_extrapolated(v, R, 20 * 512);
      rec.check("lambda_fd_oracle", "asymptotic energy pde on the ball", s.lambda_ell, fd, 1e-8,
                Semantics::relative);
    }
  }
  rec.table("scattering_asymptotics", std::move(t));
  rec.check("lambda_residual_slope", "est of lambda_l", fit_power_law(radii, lam_res).exponent, -5.0, 0.3,
            Semantics::interval);
  rec.check("int_vf_residual_slope", "est of int vf_l", fit_power_law(radii, vf_res).exponent, -2.0, 0.3,
            Semantics::interval);
}

void check_free_gas(const RunConfig& cfg, Recorder& rec) {
  using namespace freegas;
  double dual = 0.0;
  double deriv = 0.0;
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    for (double mu : {-2.0, -0.3, 0.5, 3.0, 12.0}) {
      const ThermoState st{beta, mu, cfg.q};
      dual = std::max(dual, rel_err(pressure0_quadrature(st), pressure0(st)));
      // Fourth-order central difference of P0 in mu.
      const double h = 1e-3 / beta;
      auto P = [&](double m) { return pressure0(ThermoState{beta, m, cfg.q}); };
      const double dP = (8.0 * (P(mu + h) - P(mu - h)) - (P(mu + 2 * h) - P(mu - 2 * h))) / (12.0 * h);
      deriv = std::max(deriv, rel_err(dP, density0(st)));
    }
  }
  rec.check("dual_route_pressure", "pressure non_interacting", dual, 0.0, 1e-10, Semantics::absolute,
            "max relative difference over a 4 x 5 (beta, mu) grid");
  rec.check("density_is_dP_dmu", "density non interacting", deriv, 0.0, 1e-6, Semantics::absolute);

  const std::vector<double> xs{25.0, 100.0, 400.0};
  std::vector<double> gaps;
  for (double x : xs) {
    const ThermoState st{1.0, x, cfg.q};
    gaps.push_back(density0(st) * 6.0 * pi * pi / cfg.q - std::pow(x, 1.5));
  }
  rec.check("sommerfeld_gap_exponent", "asymptotic rho_0", fit_power_law(xs, gaps).exponent, -0.5, 0.1,
            Semantics::interval);

  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100'000; ++i) {
    const double h = std::exp(std::log(1e-3) + unit(gen) * std::log(1e5));  // h in [1e-3, 1e2]
    const double t = unit(gen);
    const double t0 = 1.0 / (1.0 + std::exp(h));
    const double lhs = h * t;
    const double rhs = 2.0 * binary_relative_entropy(t, t0) + h / (1.0 + std::exp(h / 2.0));
    worst = std::max(worst, lhs - rhs);
  }
  rec.check("entropy_inequality", "claim ABL and RS", worst, 0.0, 1e-12, Semantics::upper_bound,
            "max of h t - 2 s(t,t0) - h/(1+e^{h/2}) over 1e5 samples");
}

void check_mu_tilde(const RunConfig&, Recorder& rec) {
  double worst_res = 0.0;
  double worst_lo = 0.0;
  double worst_hi = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double mu = std::pow(10.0, -4.0 + 6.0 * i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double kappa = std::pow(10.0, -3.0 + 3.0 * j / 9.0);
      const double mt = freegas::solve_mu_tilde(mu, kappa);
      worst_res = std::max(worst_res, std::abs(mt + kappa * std::pow(mt, 1.5) - mu) / mu);
      worst_lo = std::max(worst_lo, -(mu - mt));
      worst_hi = std::max(worst_hi, (mu - mt) - kappa * std::pow(mu, 1.5));
    }
  }
  rec.check("fixed_point_residual", "mu tilde", worst_res, 0.0, 1e-12, Semantics::upper_bound);
  rec.check("lower_bound", "mu tilde", worst_lo, 0.0, 0.0, Semantics::upper_bound, "max of mu~ - mu");
  rec.check("upper_bound", "mu tilde", worst_hi, 0.0, 0.0, Semantics::upper_bound,
            "max of mu - mu~ - kappa mu^{3/2}");
}

void check_lattice(const RunConfig& cfg, Recorder& rec) {
  using namespace lattice;
  const double L = 2.0 * pi;
  std::int64_t mismatches = 0;
  for (int i = 0; i <= 80; ++i) {
    const double R = 0.25 * i;  // RL/2pi = R for L = 2pi
    const int n = static_cast<int>(std::ceil(R));
    std::int64_t brute = 0;
    for (int x = -n; x <= n; ++x) {
      for (int y = -n; y <= n; ++y) {
        for (int z = -n; z <= n; ++z) brute += within(IntVec{x, y, z}, R);
      }
    }
    mismatches += brute != count_lattice_points(R, L, cfg.exec);
  }
  rec.check("count_vs_brute_force", "N(R)", static_cast<double>(mismatches), 0.0, 0.0, Semantics::boolean,
            "81 radii with RL/2pi in [0, 20]");

  std::vector<double> rs, gaps;
  for (int i = 0; i < 60; ++i) {
    const double r = 10.0 * std::pow(20.0, i / 59.0);
    rs.push_back(r);
    gaps.push_back(static_cast<double>(count_lattice_points(r, L, cfg.exec)) - 4.0 / 3.0 * pi * r * r * r);
  }
  rec.check("gap_exponent_envelope", "asy N(R)", fit_power_law(rs, envelope(gaps)).exponent, 1.4, 0.0,
            Semantics::upper_bound, "running-max envelope of |N - 4 pi R^3/3| for RL/2pi in [10, 200]");

  const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
  const auto sol = scattering::solve_neumann(v, 3.0);
  Table t;
  t.header = {"kmax", "residual", "truncation_estimate", "interior_modes"};
  std::vector<double> res;
  for (double km : {4.0, 8.0, 16.0}) {
    const CoefficientTable tab = build_tables(sol, v, 8.0, 2.0 * km, cfg.exec);
    const ResidualReport r = scattering_residual(tab, km, 2.0, cfg.exec);
    res.push_back(r.residual);
    t.rows.push_back({km, r.residual, r.truncation_estimate, static_cast<std::int64_t>(r.interior_modes)});
    rec.check("residual_below_estimate_kmax" + std::to_string(static_cast<int>(km)),
              "Wdiscrete asymptotic energy pde on the torus", r.residual, r.truncation_estimate, 0.0,
              Semantics::upper_bound);
  }
  rec.table("lattice_residual", std::move(t));
  const bool monotone = res[1] < res[0] && res[2] < res[1];
  rec.check("residual_monotone", "Wdiscrete asymptotic energy pde on the torus", monotone ? 1.0 : 0.0, 1.0,
            0.0, Semantics::boolean);
}

Table constant_sum_trend(const RunConfig& cfg, const ConstantSumStudy& study) {
  using namespace lattice;
  const auto v = make_potential(cfg);
  const double a0 = scattering::scattering_length(v);
  const int q = cfg.q;
  require(q >= 2, ErrorKind::InvalidInput, "the constant-sum study needs q >= 2");
  const double rho = study.rho0;
  const double kF = std::cbrt(6.0 * pi * pi * rho / q);
  const Exponents ex = cfg.alpha1 ? Exponents::from_alpha1(*cfg.alpha1) : Exponents::from_d(cfg.d);
  const Cutoffs cut = build_cutoffs(CutoffFamily{ex, rho, kF * kF});
  const double eps0 = rho * rho;
  const double ellL = std::pow(rho, -1.0 / 3.0 + ex.alpha3);
  const auto sol = scattering::solve_neumann(v, ellL);
  huangyang::IntegralOptions opts;
  opts.exec = cfg.exec;
  const double pred = std::pow(4.0 * pi * a0, 2) / std::pow(2.0 * pi, 9) * q * (q - 1.0) *
                      huangyang::hy_integral(kF, eps0, opts).value;
  const double k_reach = std::max(cut.zeta.outer(), cut.zeta_tilde.outer());

  Table t;
  t.header = {"kF_L_over_2pi", "L", "fermi_count", "k_modes", "C1", "C2", "C3", "wz_sum",
              "raw", "corrected", "prediction", "raw_gap", "corrected_gap"};
  for (double width : study.fermi_widths) {
    const double L = 2.0 * pi * width / kF;
    require(ellL < 0.5 * L, ErrorKind::InvalidInput, "the scattering ball does not fit the torus");
    const CoefficientTable tab = build_tables(sol, v, L, k_reach + 2.0 * kF + 1e-9, cfg.exec);
    const auto cs = huangyang::renorm_constant_sums(tab, cut, kF, eps0, q, study.mode_budget, cfg.exec);
    const double raw = cs.C2 + cs.C3;
    const double corrected = raw + cs.wz_sum;
    t.rows.push_back({width, L, cs.fermi_count, static_cast<std::int64_t>(cs.k_modes), cs.C1, cs.C2, cs.C3,
                      cs.wz_sum, raw, corrected, pred, raw / pred - 1.0, corrected / pred - 1.0});
  }
  return t;
}

void check_constant_sums(const RunConfig& cfg, Recorder& rec) {
  const ConstantSumStudy study;
  Table t = constant_sum_trend(cfg, study);
  auto column = [&](const std::string& name) {
    const auto idx = static_cast<std::size_t>(
        std::find(t.header.begin(), t.header.end(), name) - t.header.begin());
    std::vector<double> out;
    for (const auto& row : t.rows) out.push_back(std::abs(std::get<double>(row[idx])));
    return out;
  };
  const std::vector<double> raw = column("raw_gap");
  const std::vector<double> corr = column("corrected_gap");
  auto shrinking = [](const std::vector<double>& g) {
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] < g[i - 1])) return false;
    }
    return true;
  };
  auto listing = [](const std::vector<double>& g) {
    std::string s;
    for (double x : g) s += (s.empty() ? "" : ", ") + format_number(x);
    return "|gap| by L: " + s;
  };
  rec.check("raw_gap_largest_L", "int lim L int", raw.back(), 0.0, 0.2, Semantics::absolute, listing(raw));
  rec.check("raw_gap_shrinks", "int lim L int", shrinking(raw) ? 1.0 : 0.0, 1.0, 0.0, Semantics::boolean,
            listing(raw));
  rec.check("corrected_gap_largest_L", "int lim L int", corr.back(), 0.0, 0.2, Semantics::absolute,
            "C2 + C3 + W Z sum; " + listing(corr));
  rec.check("corrected_gap_shrinks", "int lim L int", shrinking(corr) ? 1.0 : 0.0, 1.0, 0.0,
            Semantics::boolean, listing(corr));
  rec.table("constant_sum_trend", std::move(t));
}

}  // namespace hylab::cli
