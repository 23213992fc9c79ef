#include <algorithm>
#include <cmath>
#include <random>

#include "hylab/cli.hpp"
#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/focklab.hpp"
#include "hylab/huangyang.hpp"

namespace hylab::cli {

using namespace focklab;
using lattice::IntVec;

namespace {

// Momenta of the default small basis; M = q * (number of momenta).
std::vector<IntVec> fock_momenta(int modes, int q) {
  static const std::vector<IntVec> pool{{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {2, 0, 0},
                                        {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  require(q >= 1 && modes % q == 0, ErrorKind::InvalidInput, "fock.modes must be a multiple of q");
  const auto n = static_cast<std::size_t>(modes / q);
  require(n >= 1 && n <= pool.size(), ErrorKind::InvalidInput, "fock.modes is out of range");
  return {pool.begin(), pool.begin() + static_cast<long>(n)};
}

struct FockSetup {
  lattice::Exponents ex;
  ModeBasis basis;
  lattice::CoefficientTable tab;
  lattice::Cutoffs cut;
  double epsilon0;
};

FockSetup make_setup(const RunConfig& cfg, int modes) {
  const double kF = cfg.fock_kF;
  const double rho = cfg.fock_rho0;
  const auto ex = cfg.alpha1 ? lattice::Exponents::from_alpha1(*cfg.alpha1) : lattice::Exponents::from_d(cfg.d);
  const PartitionParams pp{kF * kF, rho, ex.d, ex.delta1, ex.delta4};
  ModeBasis basis(cfg.fock_L, kF, cfg.q, fock_momenta(modes, cfg.q), pp);
  // Largest momentum transfer between basis momenta, in physical units.
  double reach = 0.0;
  for (const IntVec& a : basis.momenta()) {
    for (const IntVec& b : basis.momenta()) {
      reach = std::max(reach, std::sqrt(static_cast<double>((a - b).norm2())));
    }
  }
  const auto v = make_potential(cfg);
  const double ellL = std::min(3.0, 0.45 * cfg.fock_L);
  const auto sol = scattering::solve_neumann(v, ellL);
  auto tab = lattice::build_tables(sol, v, cfg.fock_L, reach * lattice::lattice_unit(cfg.fock_L) + 1e-9, cfg.exec);
  auto cut = lattice::build_cutoffs(lattice::CutoffFamily{ex, rho, kF * kF});
  return FockSetup{ex, std::move(basis), std::move(tab), cut, rho * rho};
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

void check_fock_exactness(const RunConfig& cfg, Recorder& rec) {
  const FockSetup s = make_setup(cfg, cfg.fock_modes);
  const ModeBasis& b = s.basis;

  double car = 0.0;
  std::vector<std::pair<FockOperator, FockOperator>> ladders;
  for (std::size_t i = 0; i < b.size(); ++i) ladders.push_back(build_ladder(b, i));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      FockOperator x = anticommutator(ladders[i].first, ladders[j].second);
      if (i == j) x = x - identity(b.dimension());
      car = std::max({car, max_abs(x), max_abs(anticommutator(ladders[i].first, ladders[j].first))});
    }
  }
  rec.check("canonical_anticommutation", "fock space", car, 0.0, 1e-14, Semantics::absolute,
            "M = " + std::to_string(b.size()));

  const Hamiltonian h = build_hamiltonian(b, s.tab);
  rec.check("H_commutes_with_N", "hamiltonian", max_abs(commutator(h.H(), h.N)), 0.0, 1e-12,
            Semantics::absolute);

  for (int m : {6, 8}) {
    if (m % cfg.q != 0) continue;
    const FockSetup sm = make_setup(cfg, m);
    const PotentialSplit sp = split_potential(sm.basis, sm.tab);
    rec.check("potential_split_M" + std::to_string(m), "splitting V", sp.residual, 0.0, 1e-12,
              Semantics::absolute);
  }

  // Free gas on 16 modes: the Gibbs state of K must reproduce the closed forms.
  if (16 % cfg.q == 0) {
    const FockSetup big = make_setup(cfg, 16);
    const Hamiltonian h0 = build_hamiltonian(big.basis, big.tab);
    const double beta = cfg.beta;
    const double mu = cfg.mu;
    const GibbsResult g = gibbs(h0.K, h0.N, beta, mu, cfg.fock_L);
    const double P = free_pressure(big.basis, beta, mu);
    rec.check("free_pressure_M16", "pressure non_interacting", g.pressure, P, 1e-12, Semantics::relative);
    rec.check("free_one_pdm_M16", "pressure non_interacting",
              max_diff(g.one_pdm, free_occupations(big.basis, beta, mu)), 0.0, 1e-12, Semantics::absolute);
  }

  const GibbsResult gi = gibbs(h.H(), h.N, cfg.beta, cfg.mu, cfg.fock_L);
  rec.check("trace_N_equals_pdm_sum", "one-particle density matrix", gi.trace_N, gi.mean_N, 1e-12,
            Semantics::relative);
}

void check_renormalizers(const RunConfig& cfg, Recorder& rec) {
  const FockSetup s = make_setup(cfg, cfg.fock_modes);
  const ModeBasis& b = s.basis;
  const GeneratorInputs in{&s.tab, &s.cut, s.epsilon0};
  const ParticleOps ops = particle_ops(b);
  const Hamiltonian h = build_hamiltonian(b, s.tab);
  const FockOperator H = h.H();

  rec.check("N_re_identity", "number operators",
            max_abs(ops.N_re - ops.N_re_tilde - (ops.N - static_cast<double>(b.fermi_modes()) * identity(b.dimension()))),
            0.0, 1e-14, Semantics::absolute);

  const GibbsResult g0 = gibbs(H, h.N, cfg.beta, cfg.mu, cfg.fock_L);
  const std::vector<double> s0 = spectrum(H);
  const std::pair<GeneratorKind, const char*> kinds[] = {
      {GeneratorKind::B, "B"}, {GeneratorKind::Bprime, "Bprime"}, {GeneratorKind::Btilde, "Btilde"}};
  for (const auto& [kind, name] : kinds) {
    const std::string tag = name;
    const FockOperator A = build_pair_operator(kind, b, in);
    const double charge = kind == GeneratorKind::Bprime ? 1.0 : 2.0;
    rec.check(tag + "_pair_charge", "commutators with N_re", max_abs(commutator(ops.N_re, A) - charge * A),
              0.0, 1e-12, Semantics::absolute, "|A| = " + format_number(max_abs(A)));
    const FockOperator B = build_generator(kind, b, in);
    rec.check(tag + "_antihermitian", "bogoliubov transformation", max_abs(B + B.adjoint()), 0.0, 1e-13,
              Semantics::absolute);
    const FockOperator Hc = conjugate(H, B);
    rec.check(tag + "_spectrum_preserved", "bogoliubov transformation", max_diff(s0, spectrum(Hc)), 0.0,
              1e-9, Semantics::absolute);
    const Eigen::MatrixXcd U = exp_antihermitian(B);
    const double unitary =
        (U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
    rec.check(tag + "_unitary", "bogoliubov transformation", unitary, 0.0, 1e-12, Semantics::absolute);
    const GibbsResult gc = gibbs(Hc, conjugate(h.N, B), cfg.beta, cfg.mu, cfg.fock_L);
    rec.check(tag + "_pressure_invariant", "bogoliubov transformation", gc.pressure, g0.pressure, 1e-10,
              Semantics::relative);
  }

  // The k.(q-p) cancellation sum over p, q in the Fermi ball, on a desk-scale lattice.
  const double rho = 0.05;
  const double kF = std::cbrt(6.0 * pi * pi * rho / cfg.q);
  const lattice::Cutoffs cut = lattice::build_cutoffs(lattice::CutoffFamily{s.ex, rho, kF * kF});
  const double L = 2.0 * pi * 2.0 / kF;
  const auto v = make_potential(cfg);
  const auto sol = scattering::solve_neumann(v, std::pow(rho, -1.0 / 3.0 + s.ex.alpha3));
  const double reach = std::max(cut.zeta.outer(), cut.zeta_tilde.outer()) + 2.0 * kF + 1e-9;
  const auto tab = lattice::build_tables(sol, v, L, reach, cfg.exec);
  const auto cs = huangyang::renorm_constant_sums(tab, cut, kF, rho * rho, cfg.q, 100'000, cfg.exec);
  rec.check("cutoff_cancellation", "cancellation sum", cs.cutoff_effect / std::max(cs.cutoff_effect_scale, 1e-300),
            0.0, 1e-12, Semantics::absolute,
            "relative to the sum of |terms| = " + format_number(cs.cutoff_effect_scale) +
                "; with the out-of-ball restriction the sum is " + format_number(cs.cutoff_effect_excluded));
}

void check_entropy_chain(const RunConfig& cfg, Recorder& rec) {
  const FockSetup s = make_setup(cfg, cfg.fock_modes);
  const ModeBasis& b = s.basis;
  const Hamiltonian h = build_hamiltonian(b, s.tab);

  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double min_pdm = std::numeric_limits<double>::infinity();
  double worst_gap = -std::numeric_limits<double>::infinity();
  Table t;
  t.header = {"state", "beta", "mu", "mu_tilde", "coupling", "S_one_pdm", "S_state"};
  for (int i = 0; i < cfg.fock_states; ++i) {
    const double beta = 0.5 + 4.5 * unit(gen);
    const double mu = -0.5 + 3.0 * unit(gen);
    const double mu_tilde = -0.5 + 3.0 * unit(gen);
    const double coupling = std::exp(std::log(0.5) + unit(gen) * std::log(40.0));  // [0.5, 20]
    const FockOperator H = h.K + coupling * h.V;
    const GibbsResult g = gibbs(H, h.N, beta, mu, cfg.fock_L);
    const double s1 = relative_entropy(g.one_pdm, free_occupations(b, beta, mu_tilde));
    const double s2 = state_relative_entropy(b, g, beta, mu_tilde);
    min_pdm = std::min(min_pdm, s1);
    worst_gap = std::max(worst_gap, (s1 - s2) / std::max(1.0, std::abs(s2)));
    t.rows.push_back({static_cast<std::int64_t>(i), beta, mu, mu_tilde, coupling, s1, s2});
  }
  rec.table("entropy_chain", std::move(t));
  rec.check("one_pdm_entropy_nonnegative", "relative entropy", -min_pdm, 0.0, 0.0, Semantics::upper_bound,
            "negated minimum of S(g, g0) over the states");
  rec.check("one_pdm_below_state_entropy", "relative entropy", worst_gap, 0.0, 1e-10, Semantics::upper_bound,
            "max of (S(g, g0) - S(G, G0)) / max(1, S(G, G0)) over " + std::to_string(cfg.fock_states) +
                " interacting states");

  double min_pair = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100'000; ++i) {
    min_pair = std::min(min_pair, freegas::binary_relative_entropy(unit(gen), 1e-6 + (1.0 - 2e-6) * unit(gen)));
  }
  rec.check("scalar_entropy_nonnegative", "relative entropy", -min_pair, 0.0, 0.0, Semantics::upper_bound,
            "negated minimum of s(t, t0) over 1e5 random pairs");
}

}  // namespace hylab::cli
