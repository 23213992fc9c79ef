#include <cmath>

#include "hylab/lattice.hpp"

namespace hylab::lattice {

double collision_energy(const IntVec& k, const IntVec& q, const IntVec& p, double L) {
  const double unit = lattice_unit(L);
  return unit * unit * static_cast<double>(k.norm2() + k.dot(q - p));
}

double bogoliubov_xi(const CoefficientTable& tab, const Cutoffs& cut, const IntVec& k,
                     const IntVec& q, const IntVec& p, double kF, double epsilon0) {
  const double unit = tab.unit();
  const double rho_f = kF / unit;
  if (!within(p, rho_f) || !within(q, rho_f)) return 0.0;
  if (within(p - k, rho_f) || within(q + k, rho_f)) return 0.0;
  const double kr = unit * std::sqrt(static_cast<double>(k.norm2()));
  const double zt = cut.zeta_tilde.minus(kr);
  if (zt == 0.0) return 0.0;
  const double volume = tab.L * tab.L * tab.L;
  const double kdot = unit * unit * static_cast<double>(k.dot(q - p));
  const double num = tab.W(k) * zt / volume + tab.eta(k) * kdot * cut.phi.plus(kr) * zt;
  return -num / (collision_energy(k, q, p, tab.L) + epsilon0);
}

}  // namespace hylab::lattice
