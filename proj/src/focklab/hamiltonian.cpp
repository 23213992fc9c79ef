#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/focklab.hpp"

namespace hylab::focklab {

namespace {

FockOperator diagonal(const ModeBasis& basis, const std::function<double(std::size_t)>& weight) {
  const std::uint64_t dim = basis.dimension();
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<Eigen::Triplet<double>> trip;
  for (std::uint64_t s = 0; s < dim; ++s) {
    double d = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (s >> i & 1) d += weight(i);
    }
    if (d != 0.0) trip.emplace_back(static_cast<int>(s), static_cast<int>(s), d);
  }
  m.setFromTriplets(trip.begin(), trip.end());
  return FockOperator(std::move(m));
}

FockOperator with_adjoint(const FockOperator& x) { return x + x.adjoint(); }

}  // namespace

Hamiltonian build_hamiltonian(const ModeBasis& basis, const lattice::CoefficientTable& tab) {
  require(std::abs(tab.L - basis.L()) <= 1e-12 * basis.L(), ErrorKind::InvalidInput,
          "coefficient table and basis use different L");
  const double vol = basis.L() * basis.L() * basis.L();
  Hamiltonian h;
  h.K = diagonal(basis, [&](std::size_t i) { return basis.kinetic(i); });
  h.N = diagonal(basis, [](std::size_t) { return 1.0; });
  h.V = quartic_operator(basis, [&](const IntVec& k, const IntVec&, const IntVec&, int, int) {
    return tab.vhat(k) / (2.0 * vol);
  });
  return h;
}

PotentialSplit split_potential(const ModeBasis& basis, const lattice::CoefficientTable& tab) {
  const Hamiltonian h = build_hamiltonian(basis, tab);
  const double vol = basis.L() * basis.L() * basis.L();
  const double rho_f = basis.kF() / lattice::lattice_unit(basis.L());
  auto in = [rho_f](const IntVec& k) { return lattice::within(k, rho_f); };
  // Each part restricts the monomial a*_{p-k} a*_{q+k} a_q a_p by the B_F membership of
  // (p, p-k, q, q+k) and carries its own prefactor.
  using Pattern = std::function<bool(bool p, bool pk, bool q, bool qk)>;
  auto part = [&](double scale, const Pattern& pattern) {
    return quartic_operator(basis, [&](const IntVec& k, const IntVec& p, const IntVec& q, int, int) {
      return pattern(in(p), in(p - k), in(q), in(q + k)) ? scale * tab.vhat(k) / vol : 0.0;
    });
  };
  PotentialSplit s;
  s.V0 = part(0.5, [](bool p, bool pk, bool q, bool qk) { return p && pk && q && qk; });
  s.V1 = with_adjoint(
      part(1.0, [](bool p, bool pk, bool q, bool qk) { return !pk && p && q && qk; }));
  s.V21 = with_adjoint(
      part(0.5, [](bool p, bool pk, bool q, bool qk) { return !pk && !qk && p && q; }));
  s.V22 = part(0.5, [](bool p, bool pk, bool q, bool qk) {
    return (!p && !pk && q && qk) || (p && pk && !q && !qk);
  });
  s.V23 = with_adjoint(
      part(0.5, [](bool p, bool pk, bool q, bool qk) { return !pk && qk && p && !q; }));
  s.V3 = with_adjoint(
      part(1.0, [](bool p, bool pk, bool q, bool qk) { return !pk && p && !q && !qk; }));
  s.V4 = part(0.5, [](bool p, bool pk, bool q, bool qk) { return !p && !pk && !q && !qk; });
  s.residual = max_abs(h.V - s.sum());
  return s;
}

ParticleOps particle_ops(const ModeBasis& basis) {
  require(basis.has_partition(), ErrorKind::InvalidInput, "particle operators need partition flags");
  const auto& f = basis.flags();
  ParticleOps ops;
  ops.N = diagonal(basis, [](std::size_t) { return 1.0; });
  ops.N_re = diagonal(basis, [&](std::size_t i) { return f[i].fermi ? 0.0 : 1.0; });
  ops.N_high = diagonal(basis, [&](std::size_t i) { return f[i].high ? 1.0 : 0.0; });
  ops.N_low = diagonal(basis, [&](std::size_t i) { return f[i].low ? 1.0 : 0.0; });
  // Hole counts a a* = 1 - a* a on the in-basis part of B_F.
  const FockOperator id = identity(basis.dimension());
  auto holes = [&](auto pick) {
    double count = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) count += pick(i) ? 1.0 : 0.0;
    return count * id - diagonal(basis, [&](std::size_t i) { return pick(i) ? 1.0 : 0.0; });
  };
  ops.N_re_tilde = holes([&](std::size_t i) { return f[i].fermi; });
  ops.N_surface = holes([&](std::size_t i) { return f[i].surface; });
  ops.N_inner = holes([&](std::size_t i) { return f[i].inner; });
  return ops;
}

}  // namespace hylab::focklab
