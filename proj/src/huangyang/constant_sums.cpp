#include <algorithm>
#include <cmath>
#include <vector>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/huangyang.hpp"

namespace hylab::huangyang {

using lattice::IntVec;

namespace {

struct Partial {
  CompensatedSum t1, t2, t3, direct, exchange, effect, effect_abs, effect_excluded;
};

void absorb(Partial& acc, const Partial& local, double weight) {
  acc.t1.add(weight * local.t1.value());
  acc.t2.add(weight * local.t2.value());
  acc.t3.add(weight * local.t3.value());
  acc.direct.add(weight * local.direct.value());
  acc.exchange.add(weight * local.exchange.value());
  acc.effect.add(weight * local.effect.value());
  acc.effect_abs.add(weight * local.effect_abs.value());
  acc.effect_excluded.add(weight * local.effect_excluded.value());
}

// Every summand is invariant under the 48 signed permutations of the axes, which
// map B_F to itself, so k runs over x >= y >= z >= 0 with the orbit size as weight.
int orbit_size(const IntVec& k) {
  const int c[3] = {k.x, k.y, k.z};
  int nonzero = 0;
  for (int v : c) nonzero += v != 0;
  int perms = 6;
  if (c[0] == c[1] && c[1] == c[2]) {
    perms = 1;
  } else if (c[0] == c[1] || c[1] == c[2]) {
    perms = 3;
  }
  return perms << nonzero;
}

}  // namespace

ConstantSums renorm_constant_sums(const lattice::CoefficientTable& tab, const lattice::Cutoffs& cut,
                                  double kF, double epsilon0, int q, std::size_t mode_budget,
                                  Execution exec) {
  require(q >= 1, ErrorKind::InvalidInput, "q must be at least 1");
  require(kF > 0.0 && epsilon0 > 0.0, ErrorKind::InvalidInput, "need kF > 0 and epsilon0 > 0");
  const double L = tab.L;
  const double unit = tab.unit();
  const double vol = L * L * L;
  const double rho_f = kF / unit;

  const lattice::FermiBall ball = lattice::fermi_ball(kF, L);
  const std::vector<IntVec>& B = ball.modes;
  const double k_reach = std::max(cut.zeta.outer(), cut.zeta_tilde.outer());
  require(k_reach + 2.0 * kF <= tab.kmax, ErrorKind::InvalidInput,
          "coefficient table does not cover |k| + 2 kF");
  const lattice::MomentumLattice klat(L, k_reach);
  require(klat.modes().size() <= mode_budget, ErrorKind::ResourceLimit,
          "constant sums exceed the lattice mode budget");

  ConstantSums out;
  out.volume = vol;
  out.fermi_count = ball.count;
  out.k_modes = klat.modes().size();

  // C1 over the whole table lattice.
  {
    const lattice::MomentumLattice all(L, tab.kmax);
    CompensatedSum vhat_eta;
    for (const IntVec& k : all.modes()) vhat_eta.add(tab.vhat(k) * tab.eta(k));
    const double n0 = static_cast<double>(ball.count);
    out.C1 = (tab.vhat(IntVec{}) + vhat_eta.value()) / (2.0 * vol) * q * (q - 1.0) * n0 * n0 / vol;
  }

  std::vector<IntVec> ks;
  for (const IntVec& k : klat.modes()) {
    if (k.x >= k.y && k.y >= k.z && k.z >= 0) ks.push_back(k);
  }
  const std::size_t nb = B.size();
  const std::size_t nk = ks.size();
  auto norm = [unit](const IntVec& v) { return unit * std::sqrt(static_cast<double>(v.norm2())); };

  // Work is split into fixed blocks of k so that the reduction order never
  // depends on the thread count.
  const std::size_t block = 8;
  const std::size_t nblocks = (nk + block - 1) / block;
  std::vector<Partial> blocks(nblocks);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::vector<char> out_p(nb), out_q(nb);
    for (std::size_t ik = b * block; ik < std::min(nk, (b + 1) * block); ++ik) {
      const IntVec& k = ks[ik];
      if (k.norm2() == 0) continue;
      Partial acc;
      const double kr = norm(k);
      const double eta_k = tab.eta(k);
      const double W_k = tab.W(k);
      const double phi_p = cut.phi.plus(kr);
      const double zeta_m = cut.zeta.minus(kr);
      const double zt_m = cut.zeta_tilde.minus(kr);
      if (zeta_m == 0.0 && zt_m == 0.0) continue;
      std::size_t n_out_p = 0, n_out_q = 0;
      for (std::size_t i = 0; i < nb; ++i) {
        out_p[i] = !lattice::within(B[i] - k, rho_f);
        out_q[i] = !lattice::within(B[i] + k, rho_f);
        n_out_p += out_p[i];
        n_out_q += out_q[i];
      }
      // Cancellation sum with only p, q in B_F imposed; odd under p <-> q.
      if (phi_p * zeta_m != 0.0) {
        const double c = eta_k * eta_k * phi_p * zeta_m;
        for (const IntVec& p : B) {
          for (const IntVec& qq : B) {
            const double e = c * unit * unit * static_cast<double>(k.dot(qq - p));
            acc.effect.add(e);
            acc.effect_abs.add(std::abs(e));
          }
        }
      }
      if (n_out_p == 0 || n_out_q == 0) {
        absorb(blocks[b], acc, orbit_size(k));
        continue;
      }
      acc.t1.add(W_k * eta_k * phi_p * zeta_m * static_cast<double>(n_out_p * n_out_q));
      for (std::size_t ip = 0; ip < nb; ++ip) {
        if (!out_p[ip]) continue;
        const IntVec& p = B[ip];
        for (std::size_t iq = 0; iq < nb; ++iq) {
          if (!out_q[iq]) continue;
          const IntVec& qq = B[iq];
          const IntVec qp = qq - p;
          const double kdot = unit * unit * static_cast<double>(k.dot(qp));
          const double den = unit * unit * static_cast<double>(k.norm2() + k.dot(qp)) + epsilon0;
          const double e = eta_k * eta_k * kdot * phi_p * zeta_m;
          acc.effect_excluded.add(e);
          const double a = W_k * zt_m / vol + eta_k * kdot * phi_p * zt_m;
          acc.direct.add(a * a / den);
          if (ip == iq) continue;
          const IntVec k2 = k + qp;
          const double k2r = norm(k2);
          const double eta_k2 = tab.eta(k2);
          const double phi2_p = cut.phi.plus(k2r);
          acc.t2.add(W_k * eta_k2 * zeta_m * phi_p * phi2_p);
          acc.t3.add(eta_k * eta_k2 * zeta_m * phi2_p * kdot);
          const double zt2_m = cut.zeta_tilde.minus(k2r);
          const double kdot2 = -unit * unit * static_cast<double>(k2.dot(qp));
          const double a2 = tab.W(k2) * zt2_m / vol + eta_k2 * kdot2 * phi2_p * zt2_m;
          acc.exchange.add(a * a2 / den);
        }
      }
      absorb(blocks[b], acc, orbit_size(k));
    }
  }

  Partial tot;
  for (const Partial& p : blocks) {
    tot.t1.merge(p.t1);
    tot.t2.merge(p.t2);
    tot.t3.merge(p.t3);
    tot.direct.merge(p.direct);
    tot.exchange.merge(p.exchange);
    tot.effect.merge(p.effect);
    tot.effect_abs.merge(p.effect_abs);
    tot.effect_excluded.merge(p.effect_excluded);
  }
  const double qd = q;
  out.C2 = (qd * qd * tot.t1.value() / vol - qd * tot.t2.value() / vol - qd * tot.t3.value()) / vol;
  out.C3 = (-qd * qd * tot.direct.value() + qd * tot.exchange.value()) / vol;
  out.cutoff_effect = qd * qd * tot.effect.value();
  out.cutoff_effect_scale = qd * qd * tot.effect_abs.value();
  out.cutoff_effect_excluded = qd * qd * tot.effect_excluded.value();

  // W_k Z_k / |k|^2 with Z_k = W_k - L^3 |k|^2 eta_k from the discrete scattering equation.
  {
    const lattice::MomentumLattice all(L, tab.kmax);
    CompensatedSum wz;
    for (const IntVec& k : all.modes()) {
      if (k.norm2() == 0) continue;
      const double k2 = unit * unit * static_cast<double>(k.norm2());
      const double z = tab.W(k) - vol * k2 * tab.eta(k);
      wz.add(tab.W(k) * z / k2);
    }
    const double n0 = static_cast<double>(ball.count);
    out.wz_sum = qd * (qd - 1.0) * n0 * n0 * wz.value() / (vol * vol) / vol;
  }
  return out;
}

}  // namespace hylab::huangyang
