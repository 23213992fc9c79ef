#include "hylab/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"

namespace hylab::scattering {

namespace {

using State = std::array<double, 2>;
using Stepper = boost::numeric::odeint::runge_kutta4<State>;

struct Interior {
  double step = 0.0;
  std::vector<double> u;
  std::vector<double> du;
};

/// RK4 for u'' = (v/2 - lambda) u from u(0) = 0, u'(0) = 1 across [0, R_v].
Interior integrate_interior(const RadialPotential& v, double lambda, int steps, bool keep) {
  Interior out;
  const double rv = v.support_radius();
  out.step = rv / steps;
  if (keep) {
    out.u.reserve(steps + 1);
    out.du.reserve(steps + 1);
  }
  State y{0.0, 1.0};
  if (keep) {
    out.u.push_back(y[0]);
    out.du.push_back(y[1]);
  }
  Stepper stepper;
  auto rhs = [&](const State& s, State& ds, double r) {
    ds[0] = s[1];
    ds[1] = (0.5 * v(r) - lambda) * s[0];
  };
  for (int i = 0; i < steps; ++i) {
    stepper.do_step(rhs, y, out.step * i, out.step);
    if (keep) {
      out.u.push_back(y[0]);
      out.du.push_back(y[1]);
    }
  }
  require(std::isfinite(y[0]) && std::isfinite(y[1]), ErrorKind::SolverFailure,
          "interior integration overflowed");
  if (!keep) {
    out.u = {y[0]};
    out.du = {y[1]};
  }
  return out;
}

/// Exterior free solution u = du_e s sinc(k s) + u_e cos(k s), s = r - R_v, and its slope.
std::pair<double, double> exterior(double u_e, double du_e, double k, double s) {
  const double ks = k * s;
  const double c = std::cos(ks);
  const double u = du_e * s * sinc(ks) + u_e * c;
  const double du = du_e * c - k * u_e * std::sin(ks);
  return {u, du};
}

double neumann_mismatch(double u_e, double du_e, double lambda, double rv, double ell) {
  const auto [u, du] = exterior(u_e, du_e, std::sqrt(lambda), ell - rv);
  return du - u / ell;
}

double a0_from_edge(const RadialPotential& v, int steps) {
  const Interior in = integrate_interior(v, 0.0, steps, false);
  require(in.du.back() > 0.0, ErrorKind::SolverFailure, "zero-energy solution has no positive slope");
  return v.support_radius() - in.u.back() / in.du.back();
}

struct Eigen {
  double lambda = 0.0;
  double width = 0.0;
};

Eigen bisect_lambda(const RadialPotential& v, double ell, int steps) {
  const double rv = v.support_radius();
  auto mismatch = [&](double lambda) {
    const Interior in = integrate_interior(v, lambda, steps, false);
    return neumann_mismatch(in.u.back(), in.du.back(), lambda, rv, ell);
  };
  double lo = 0.0;
  double hi = 4.0 / (ell * ell);
  const double f_lo = mismatch(lo);
  const double f_hi = mismatch(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    fail(ErrorKind::SolverFailure, "eigenvalue bracket not found");
  }
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mismatch(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), hi - lo};
}

}  // namespace

double scattering_length(const RadialPotential& v, double tol) {
  require(tol > 0.0, ErrorKind::InvalidInput, "tolerance must be positive");
  if (v.is_zero()) return 0.0;
  int steps = 4096;
  double coarse = a0_from_edge(v, steps);
  while (steps <= (1 << 22)) {
    steps *= 2;
    const double fine = a0_from_edge(v, steps);
    if (std::abs(fine - coarse) <= tol * std::max(std::abs(fine), 1e-3 * v.support_radius())) {
      return fine;
    }
    coarse = fine;
  }
  fail(ErrorKind::SolverFailure, "scattering length did not converge under step refinement");
}

double lambda_asymptotic(double a0, double ellL) {
  require(ellL > 0.0, ErrorKind::InvalidInput, "ellL must be positive");
  return 3.0 * a0 / (ellL * ellL * ellL) * (1.0 + 1.8 * a0 / ellL);
}

ScatteringSolution solve_neumann(const RadialPotential& v, double ellL, const SolverOptions& opts) {
  require(ellL > 0.0 && std::isfinite(ellL), ErrorKind::InvalidInput, "ellL must be positive");
  require(ellL > 2.0 * v.support_radius(), ErrorKind::InvalidInput,
          "ellL must exceed twice the support radius of v");
  require(opts.interior_steps >= 8 && opts.interior_steps % 4 == 0, ErrorKind::InvalidInput,
          "interior_steps must be a positive multiple of 4");
  require(opts.output_nodes >= 4, ErrorKind::InvalidInput, "output_nodes must be at least 4");
  require(opts.eigen_tol > 0.0 && opts.length_tol > 0.0, ErrorKind::InvalidInput,
          "tolerances must be positive");

  ScatteringSolution sol;
  sol.ellL = ellL;
  const double rv = v.support_radius();
  sol.support_radius = rv;

  if (v.is_zero()) {
    sol.support_radius = 0.0;
    sol.edge_u = 0.0;
    sol.edge_du = 1.0;
    sol.scale = 1.0;
  } else {
    sol.a0 = scattering_length(v, opts.length_tol);
    int steps = opts.interior_steps;
    Eigen fine;
    for (;;) {
      fine = bisect_lambda(v, ellL, steps);
      const Eigen coarse = bisect_lambda(v, ellL, steps / 2);
      sol.residual = std::max(std::abs(fine.lambda - coarse.lambda), fine.width) / fine.lambda;
      if (sol.residual <= opts.eigen_tol) break;
      require(steps < (1 << 20), ErrorKind::SolverFailure,
              "eigenvalue did not converge under step refinement");
      steps *= 2;
    }
    sol.lambda_ell = fine.lambda;
    sol.wavenumber = std::sqrt(fine.lambda);
    Interior in = integrate_interior(v, fine.lambda, steps, true);
    sol.interior_step = in.step;
    sol.edge_u = in.u.back();
    sol.edge_du = in.du.back();
    sol.interior_u = std::move(in.u);
    sol.interior_du = std::move(in.du);
    sol.interior_v.resize(sol.interior_u.size());
    for (std::size_t i = 0; i < sol.interior_v.size(); ++i) {
      sol.interior_v[i] = v(sol.interior_step * static_cast<double>(i));
    }
    const auto [u_end, du_end] =
        exterior(sol.edge_u, sol.edge_du, sol.wavenumber, ellL - rv);
    (void)du_end;
    sol.scale = ellL / u_end;
  }

  // Output grid: cosine clustering on [0, R_v], geometric on [R_v, ellL].
  const int n = opts.output_nodes;
  if (sol.support_radius > 0.0) {
    const int n_in = n / 4;
    const int n_out = n - n_in;
    for (int i = 0; i < n_in; ++i) {
      sol.r_grid.push_back(0.5 * rv * (1.0 - std::cos(pi * i / n_in)));
    }
    for (int j = 0; j < n_out; ++j) {
      sol.r_grid.push_back(rv * std::pow(ellL / rv, static_cast<double>(j) / (n_out - 1)));
    }
    sol.r_grid.back() = ellL;
  } else {
    for (int i = 0; i < n; ++i) sol.r_grid.push_back(ellL * i / (n - 1));
  }
  sol.u_grid.reserve(sol.r_grid.size());
  sol.w_grid.reserve(sol.r_grid.size());
  for (double r : sol.r_grid) {
    sol.u_grid.push_back(sol.u(r));
    sol.w_grid.push_back(sol.w(r));
  }
  return sol;
}

double ScatteringSolution::u(double r) const {
  if (r <= 0.0) return 0.0;
  const double rr = std::min(r, ellL);
  if (rr <= support_radius && !interior_u.empty()) {
    const double t = rr / interior_step;
    const std::size_t last = interior_u.size() - 1;
    const std::size_t i = std::min(static_cast<std::size_t>(t), last - 1);
    const double x = t - static_cast<double>(i);
    const double h = interior_step;
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = x * x * (x - 1);
    return scale * (h00 * interior_u[i] + h10 * h * interior_du[i] + h01 * interior_u[i + 1] +
                    h11 * h * interior_du[i + 1]);
  }
  return scale * exterior(edge_u, edge_du, wavenumber, rr - support_radius).first;
}

double ScatteringSolution::f(double r) const {
  if (r >= ellL) return 1.0;
  if (r <= 0.0) return scale;
  return u(r) / r;
}

double ScatteringSolution::w(double r) const { return r >= ellL ? 0.0 : 1.0 - f(r); }

double ScatteringSolution::df(double r) const {
  if (r > ellL) return 0.0;
  if (r > support_radius) {
    const auto [uu, du] = exterior(edge_u, edge_du, wavenumber, r - support_radius);
    return scale * (du - uu / r) / r;
  }
  // Interior slope at the nearest RK node.
  const std::size_t i = std::min(static_cast<std::size_t>(std::lround(r / interior_step)),
                                 interior_u.size() - 1);
  const double ri = interior_step * static_cast<double>(i);
  if (ri == 0.0) return 0.0;
  return scale * (interior_du[i] - interior_u[i] / ri) / ri;
}

double far_field_scattering_length(const ScatteringSolution& sol) {
  const double k = sol.wavenumber;
  const double shift = k > 0.0 ? std::atan2(k * sol.edge_u, sol.edge_du) / k
                                : sol.edge_u / sol.edge_du;
  return sol.support_radius - shift;
}

namespace {

/// Simpson sum over the interior nodes of g(i, r_i); also returns the estimate
/// from the doubled step so callers can bound the quadrature error.
template <class G>
std::pair<double, double> simpson_interior(const ScatteringSolution& sol, G&& g) {
  const std::size_t n = sol.interior_u.size() - 1;
  const double h = sol.interior_step;
  CompensatedSum fine, coarse;
  for (std::size_t i = 0; i <= n; ++i) {
    const double val = g(i, h * static_cast<double>(i));
    const double wf = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    fine.add(wf * val);
    if (i % 2 == 0) {
      const std::size_t j = i / 2;
      const double wc = (i == 0 || i == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      coarse.add(wc * val);
    }
  }
  return {fine.value() * h / 3.0, coarse.value() * 2.0 * h / 3.0};
}

const GaussRule& rule16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

}  // namespace

std::pair<double, double> integrals_vf_w(const ScatteringSolution& sol, const RadialPotential& v,
                                         double tol) {
  (void)v;
  if (sol.interior_u.empty()) {
    if (sol.support_radius == 0.0) return {0.0, 0.0};
    fail(ErrorKind::InvalidInput, "solution carries no interior samples");
  }
  const double c = sol.scale;
  const auto [vf, vf_coarse] = simpson_interior(sol, [&](std::size_t i, double r) {
    return sol.interior_v[i] * c * sol.interior_u[i] * r;
  });
  const double vf_err = std::abs(vf - vf_coarse) / 15.0;

  const auto [w_in, w_in_coarse] = simpson_interior(sol, [&](std::size_t i, double r) {
    return (r - c * sol.interior_u[i]) * r;
  });
  const double rv = sol.support_radius;
  const int panels = 16 + static_cast<int>(std::ceil(sol.wavenumber * (sol.ellL - rv)));
  const double w_out = integrate_panels(
      [&](double r) { return (r - sol.u(r)) * r; }, rv, sol.ellL, panels, rule16());
  const double w_total = w_in + w_out;
  const double w_err = std::abs(w_in - w_in_coarse) / 15.0;

  if (vf_err > tol * std::abs(vf) || w_err > tol * std::abs(w_total)) {
    fail(ErrorKind::AccuracyFailure, "radial quadrature error estimate exceeds tolerance");
  }
  return {4.0 * pi * vf, 4.0 * pi * w_total};
}

double w_radial_transform(const ScatteringSolution& sol, double p) {
  p = std::abs(p);
  if (sol.interior_u.empty()) return 0.0;
  const double c = sol.scale;
  const double inner = simpson_interior(sol, [&](std::size_t i, double r) {
                         return (r - c * sol.interior_u[i]) * r * sinc(p * r);
                       }).first;
  const double rv = sol.support_radius;
  const double span = sol.ellL - rv;
  const int panels =
      8 + static_cast<int>(std::ceil(0.5 * (p + sol.wavenumber) * span));
  const double outer = integrate_panels(
      [&](double r) { return (r - sol.u(r)) * r * sinc(p * r); }, rv, sol.ellL, panels, rule16());
  return inner + outer;
}

}  // namespace hylab::scattering
