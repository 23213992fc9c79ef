#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "hylab/common/execution.hpp"
#include "hylab/scattering.hpp"

namespace hylab::lattice {

/// Integer coordinates n of a momentum k = (2 pi / L) n.
struct IntVec {
  int x = 0;
  int y = 0;
  int z = 0;

  std::int64_t norm2() const {
    return std::int64_t{x} * x + std::int64_t{y} * y + std::int64_t{z} * z;
  }
  std::int64_t dot(const IntVec& o) const {
    return std::int64_t{x} * o.x + std::int64_t{y} * o.y + std::int64_t{z} * o.z;
  }
  IntVec operator+(const IntVec& o) const { return {x + o.x, y + o.y, z + o.z}; }
  IntVec operator-(const IntVec& o) const { return {x - o.x, y - o.y, z - o.z}; }
  IntVec operator-() const { return {-x, -y, -z}; }
  auto operator<=>(const IntVec&) const = default;
};

inline double lattice_unit(double L) { return 2.0 * 3.14159265358979323846 / L; }

/// Largest RL/2pi accepted by the point counter.
inline constexpr double kCountBudget = 5000.0;

/// True iff |n| <= radius, decided on integers once radius^2 is fixed.
bool within(const IntVec& n, double radius);

/// #{k in (2pi/L)Z^3 : |k| <= R}.
std::int64_t count_lattice_points(double R, double L, Execution exec = Execution::parallel);

/// Modes with |k| <= kmax in lexicographic order of their integer coordinates.
class MomentumLattice {
 public:
  MomentumLattice(double L, double kmax);

  double L() const { return L_; }
  double kmax() const { return kmax_; }
  double unit() const { return lattice_unit(L_); }
  int half_width() const { return half_; }
  const std::vector<IntVec>& modes() const { return modes_; }
  /// Position of n in modes(), or -1.
  long index_of(const IntVec& n) const;
  double norm(const IntVec& n) const;

 private:
  double L_;
  double kmax_;
  int half_;
  std::vector<IntVec> modes_;
  std::vector<std::int32_t> lookup_;
};

struct FermiBall {
  std::vector<IntVec> modes;
  std::int64_t count = 0;
};

FermiBall fermi_ball(double kF, double L);

/// 3D Fourier transform of the potential at |k|.
double vhat(const scattering::RadialPotential& v, double k);

/// Fourier transform of the indicator of the ball of radius R.
double chi_hat(double R, double p);

/// eta_p, W_p and vhat_k on the lattice, stored as radial profiles indexed by
/// the integer |n|^2, so every table is exactly even under n -> -n.
class CoefficientTable {
 public:
  double L = 0.0;
  double kmax = 0.0;
  double lambda_ell = 0.0;
  double ellL = 0.0;
  std::vector<double> eta_radial;   // index |n|^2 <= (kmax L/2pi)^2
  std::vector<double> W_radial;     // same index range
  std::vector<double> vhat_radial;  // index |n|^2 <= (3 kmax L/2pi + 1)^2

  double unit() const { return lattice_unit(L); }
  std::int64_t max_n2() const { return static_cast<std::int64_t>(eta_radial.size()) - 1; }
  std::int64_t max_vhat_n2() const { return static_cast<std::int64_t>(vhat_radial.size()) - 1; }
  double eta(const IntVec& n) const;
  double W(const IntVec& n) const;
  double vhat(const IntVec& n) const;
};

/// Builds eta_p = -L^{-3} int w e^{-ipx}, W_p = lambda (chi_hat + L^3 eta_p) and vhat_k.
CoefficientTable build_tables(const scattering::ScatteringSolution& sol,
                              const scattering::RadialPotential& v, double L, double kmax,
                              Execution exec = Execution::parallel);

struct ResidualReport {
  double residual = 0.0;             // max over interior p of the identity defect
  double truncation_estimate = 0.0;  // bound on the dropped |q| > kmax tail
  std::size_t interior_modes = 0;
};

/// Defect of |p|^2 eta_p + (1/2L^3) sum_q vhat_{p-q} eta_q + vhat_p/2L^3 - W_p/L^3
/// over |p| <= p_interior with the q-sum truncated to |q| <= kmax. The tail is
/// estimated from the shell kmax < |q| <= 2 kmax, so the table must reach 2 kmax.
ResidualReport scattering_residual(const CoefficientTable& tab, double kmax, double p_interior,
                                   Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Cutoff families

/// Exponent set of the renormalisation scheme, parametrised by d.
struct Exponents {
  double d = 1.0 / 9.0;
  double delta1 = 0.0, delta2 = 0.0, delta3 = 0.0, delta4 = 0.0;
  double alpha2 = 0.0, alpha3 = 0.0, alpha4 = 0.0, alpha5 = 0.0, alpha6 = 0.0;
  double epsilon = 0.0;

  double beta1() const { return 1.0 / 3.0 + alpha5; }
  static Exponents from_d(double d);
  /// d = min(alpha1 - 1/6, 1/9); requires alpha1 > 1/6.
  static Exponents from_alpha1(double alpha1);
};

struct CutoffFamily {
  Exponents exps;
  double rho0_tilde = 0.0;
  double mu_tilde = 0.0;
};

/// Radial profile equal to 1 up to `inner`, 0 from `outer`, quintic smoothstep between.
class RadialCutoff {
 public:
  RadialCutoff() = default;
  RadialCutoff(double inner, double outer);
  double minus(double r) const;
  double plus(double r) const { return 1.0 - minus(r); }
  double dminus(double r) const;
  double inner() const { return inner_; }
  double outer() const { return outer_; }

 private:
  double inner_ = 0.0;
  double outer_ = 1.0;
};

double smoothstep5(double t);

struct Cutoffs {
  RadialCutoff phi;         // momentum space, scale rho~^{-alpha2}
  RadialCutoff zeta;        // rho~^{-beta1}
  RadialCutoff zeta_tilde;  // rho~^{-alpha6}
  RadialCutoff gamma;       // rho~^{-delta3}
  RadialCutoff theta;       // position space, 1/2 rho~^{-1/3} to rho~^{-1/3}
};

Cutoffs build_cutoffs(const CutoffFamily& fam);

// ---------------------------------------------------------------------------
// Bogoliubov coefficients

/// |k|^2 + k.(q-p), in physical units.
double collision_energy(const IntVec& k, const IntVec& q, const IntVec& p, double L);

/// xi_{k,q,p} (spin independent); zero off the support p, q in B_F and p-k, q+k outside.
double bogoliubov_xi(const CoefficientTable& tab, const Cutoffs& cut, const IntVec& k,
                     const IntVec& q, const IntVec& p, double kF, double epsilon0);

}  // namespace hylab::lattice
