#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/scattering.hpp"

namespace hylab::scattering {

namespace {

// Nodal potential for the FD grid: average of the one-sided limits, which keeps
// second-order accuracy when a jump of v sits on a node.
double nodal_half_potential(const RadialPotential& v, double r, double h) {
  const double eps = 1e-9 * h;
  return 0.25 * (v(r - eps) + v(r + eps));
}

// The tridiagonal pencil (A - lambda M) u = 0 with M = diag(1, ..., 1, 1/2) is
// solved row by row in difference form d_i = u_{i+1} - u_i, which avoids the
// cancellation of the 2u_i term. The last row carries the Robin condition via a
// ghost node. Its sign changes exactly once on [0, 4/R^2].
double pencil_mismatch(const RadialPotential& v, double ell, int cells, double lambda) {
  const double h = ell / cells;
  const double h2 = h * h;
  double u = 1.0;  // u_1; u_0 = 0
  double d = 1.0;  // u_1 - u_0
  for (int i = 1; i < cells; ++i) {
    const double r = h * i;
    d += h2 * (nodal_half_potential(v, r, h) - lambda) * u;
    u += d;
  }
  const double vn = nodal_half_potential(v, ell, h);
  return -2.0 * d + 2.0 * h * u / ell - h2 * (vn - lambda) * u;
}

}  // namespace

double fd_neumann_eigenvalue(const RadialPotential& v, double ellL, int cells) {
  require(ellL > 0.0 && cells >= 4, ErrorKind::InvalidInput, "FD oracle needs ellL > 0 and cells >= 4");
  if (v.is_zero()) return 0.0;
  double lo = 0.0;
  double hi = 4.0 / (ellL * ellL);
  const double g_lo = pencil_mismatch(v, ellL, cells, lo);
  const double g_hi = pencil_mismatch(v, ellL, cells, hi);
  require(g_lo * g_hi < 0.0, ErrorKind::SolverFailure, "FD eigenvalue bracket not found");
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((pencil_mismatch(v, ellL, cells, mid) > 0.0) == (g_lo > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double fd_neumann_eigenvalue_extrapolated(const RadialPotential& v, double ellL, int cells) {
  const double l1 = fd_neumann_eigenvalue(v, ellL, cells);
  const double l2 = fd_neumann_eigenvalue(v, ellL, 2 * cells);
  const double l4 = fd_neumann_eigenvalue(v, ellL, 4 * cells);
  const double r1 = (4.0 * l2 - l1) / 3.0;
  const double r2 = (4.0 * l4 - l2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace hylab::scattering
