#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hylab::scattering {

enum class PotentialKind { SquareWell, GaussianBump, Tabulated };

std::string to_string(PotentialKind kind);
PotentialKind parse_potential_kind(const std::string& name);

/// Nonnegative, radial, compactly supported interaction v(r).
///
/// `strength` V0 is half the peak value of v, so the zero-energy radial
/// equation inside a square well reads -u'' + V0 u = 0 (units hbar = 2m = 1).
/// The support is closed: v(R_v) is the left limit and v(r) = 0 for r > R_v.
class RadialPotential {
 public:
  static RadialPotential zero();
  static RadialPotential square_well(double strength, double range);
  /// v(r) = 2 V0 exp(1 - 1/(1 - (r/b)^2)) for r < b; C-infinity with compact support.
  static RadialPotential gaussian_bump(double strength, double range);
  /// Piecewise-linear table; radii strictly increasing from 0, last value must be 0.
  static RadialPotential tabulated(std::vector<double> radii, std::vector<double> values);

  double operator()(double r) const;
  PotentialKind kind() const { return kind_; }
  double strength() const { return strength_; }
  double range() const { return range_; }
  double support_radius() const { return support_; }
  bool is_zero() const { return support_ == 0.0 || strength_ == 0.0; }
  /// Only the bump kind is C-infinity; square wells and tables are merely C0 or worse.
  bool is_smooth() const { return kind_ == PotentialKind::GaussianBump; }
  const std::vector<double>& table_radii() const { return radii_; }
  const std::vector<double>& table_values() const { return values_; }

 private:
  PotentialKind kind_ = PotentialKind::SquareWell;
  double strength_ = 0.0;
  double range_ = 0.0;
  double support_ = 0.0;
  std::vector<double> radii_;
  std::vector<double> values_;
};

struct SolverOptions {
  int interior_steps = 4096;  // RK4 steps across [0, R_v]; must be even
  int output_nodes = 4096;    // nodes of the reported u/w grid
  double eigen_tol = 1e-10;   // relative tolerance on lambda_ell
  double length_tol = 1e-8;   // relative tolerance on a0
};

/// Neumann ground state on the ball of radius ellL, normalised so f(ellL) = 1.
///
/// f is stored through u = r f: on [0, R_v] as RK4 samples (u, u') and beyond R_v
/// through the exact free solution. `residual` is a relative error estimate that
/// dominates the change of lambda_ell under halving the interior step.
struct ScatteringSolution {
  double a0 = 0.0;
  double lambda_ell = 0.0;
  double ellL = 0.0;
  double residual = 0.0;
  std::vector<double> r_grid;
  std::vector<double> u_grid;
  std::vector<double> w_grid;

  double support_radius = 0.0;
  double wavenumber = 0.0;  // sqrt(lambda_ell)
  double scale = 1.0;       // multiplies the raw shooting solution
  double edge_u = 0.0;      // raw u(R_v)
  double edge_du = 1.0;     // raw u'(R_v)
  double interior_step = 0.0;
  std::vector<double> interior_u;
  std::vector<double> interior_du;
  std::vector<double> interior_v;

  /// Normalised u(r) = r f(r) for 0 <= r <= ellL.
  double u(double r) const;
  double f(double r) const;
  /// w = 1 - f inside the ball, 0 outside (constant extension).
  double w(double r) const;
  double df(double r) const;
};

/// a0 from the zero-energy solution of -u'' + (v/2) u = 0, u(0) = 0.
double scattering_length(const RadialPotential& v, double tol = 1e-8);

ScatteringSolution solve_neumann(const RadialPotential& v, double ellL,
                                 const SolverOptions& opts = {});

/// 3 a0/(ellL)^3 (1 + 9 a0/(5 ellL)).
double lambda_asymptotic(double a0, double ellL);

/// (int v f_ell d^3x, int w_ell d^3x) by radial quadrature.
std::pair<double, double> integrals_vf_w(const ScatteringSolution& sol,
                                         const RadialPotential& v, double tol = 1e-9);

/// Scattering length read off the exterior slope of f_ell at R_v.
double far_field_scattering_length(const ScatteringSolution& sol);

/// int_0^ellL w(r) r sin(p r) dr / p for p > 0 and int_0^ellL w(r) r^2 dr at p = 0,
/// so the 3D transform of w is 4 pi times this value.
double w_radial_transform(const ScatteringSolution& sol, double p);

/// Lowest eigenvalue of the second-order finite-difference discretisation of the
/// Neumann problem on a uniform grid with `cells` cells, located by Sturm-sequence
/// bisection of the generalised tridiagonal pencil. Used as an independent oracle.
double fd_neumann_eigenvalue(const RadialPotential& v, double ellL, int cells);

/// Richardson-extrapolated FD eigenvalue from grids cells, 2 cells, 4 cells.
double fd_neumann_eigenvalue_extrapolated(const RadialPotential& v, double ellL, int cells);

}  // namespace hylab::scattering
