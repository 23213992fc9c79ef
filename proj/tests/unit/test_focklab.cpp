#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hylab/common/errors.hpp"
#include "hylab/focklab.hpp"
#include "hylab/freegas.hpp"

using namespace hylab;
using namespace hylab::focklab;

namespace {

constexpr double pi = std::numbers::pi;

ModeBasis small_basis(int q = 2) {
  return ModeBasis(2.0 * pi, 0.6, q, {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {2, 0, 0}});
}

lattice::CoefficientTable small_table() {
  const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
  return lattice::build_tables(scattering::solve_neumann(v, 3.0), v, 2.0 * pi, 3.0);
}

}  // namespace

TEST_SUITE("focklab") {
  TEST_CASE("basis layout and budget") {
    const ModeBasis b = small_basis();
    CHECK(b.size() == 8);
    CHECK(b.dimension() == 256);
    CHECK(b.index_of({1, 0, 0}, 1) == 3);
    CHECK(b.index_of({5, 0, 0}, 0) == -1);
    CHECK(b.fermi_modes() == 2);
    CHECK(b.kinetic(6) == doctest::Approx(4.0));
    CHECK_THROWS_AS(ModeBasis(2.0 * pi, 0.6, 2, {{0, 0, 0}, {0, 0, 0}}), Error);
    std::vector<lattice::IntVec> many;
    for (int i = 0; i < 9; ++i) many.push_back({i, 0, 0});
    CHECK_THROWS_AS(ModeBasis(2.0 * pi, 0.6, 2, many), Error);
  }

  TEST_CASE("Jordan-Wigner ordering") {
    const ModeBasis b = small_basis(1);
    const auto [a0, c0] = build_ladder(b, 0);
    const auto [a1, c1] = build_ladder(b, 1);
    CHECK(max_abs(c0 * c1 + c1 * c0) == 0.0);
    CHECK(max_abs(anticommutator(a0, c0) - identity(b.dimension())) == 0.0);
    // a*_0 a*_1 |0> = |1100> with sign +, a*_1 a*_0 |0> = - |1100>
    const Eigen::MatrixXd m = (c0 * c1).dense();
    const Eigen::MatrixXd n = (c1 * c0).dense();
    CHECK(m(3, 0) == -n(3, 0));
    CHECK(std::abs(m(3, 0)) == 1.0);
  }

  TEST_CASE("Hamiltonian conserves particle number and momentum") {
    const ModeBasis b = small_basis();
    const Hamiltonian h = build_hamiltonian(b, small_table());
    CHECK(h.H().hermitian());
    CHECK(max_abs(commutator(h.H(), h.N)) < 1e-14);
    FockOperator P(SparseMatrix(b.dimension(), b.dimension()));
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto [a, c] = build_ladder(b, i);
      P = P + static_cast<double>(b.modes()[i].k.x) * (c * a);
    }
    CHECK(max_abs(commutator(h.V, P)) < 1e-14);
  }

  TEST_CASE("single-mode Gibbs state is Fermi-Dirac") {
    const ModeBasis b(2.0 * pi, 0.5, 1, {{1, 0, 0}});
    const Hamiltonian h = build_hamiltonian(b, small_table());
    const GibbsResult g = gibbs(h.H(), h.N, 2.0, 0.3, 2.0 * pi);
    CHECK(g.one_pdm[0] == doctest::Approx(1.0 / (1.0 + std::exp(2.0 * (1.0 - 0.3)))).epsilon(1e-14));
    CHECK(g.log_partition == doctest::Approx(std::log1p(std::exp(-1.4))).epsilon(1e-14));
  }

  TEST_CASE("free Gibbs state matches closed forms") {
    const ModeBasis b = small_basis();
    const Hamiltonian h = build_hamiltonian(b, small_table());
    const GibbsResult g = gibbs(h.K, h.N, 1.5, 0.4, 2.0 * pi);
    CHECK(g.pressure == doctest::Approx(free_pressure(b, 1.5, 0.4)).epsilon(1e-13));
    const auto occ = free_occupations(b, 1.5, 0.4);
    for (std::size_t i = 0; i < occ.size(); ++i) CHECK(g.one_pdm[i] == doctest::Approx(occ[i]).epsilon(1e-13));
    CHECK(g.blocks == b.dimension());
  }

  TEST_CASE("potential split sums back to V") {
    const ModeBasis b(2.0 * pi, 0.6, 2, {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {2, 0, 0}},
                      PartitionParams{0.36, 0.8, 1.0 / 9.0, 0.05, 0.02});
    const auto tab = small_table();
    const PotentialSplit s = split_potential(b, tab);
    CHECK(s.residual < 1e-12);
    CHECK(max_abs(s.sum() - build_hamiltonian(b, tab).V) < 1e-12);
  }

  TEST_CASE("conjugation by a zero generator is the identity") {
    const ModeBasis b = small_basis();
    const Hamiltonian h = build_hamiltonian(b, small_table());
    const FockOperator zero(SparseMatrix(b.dimension(), b.dimension()));
    CHECK(max_abs(conjugate(h.H(), zero) - h.H()) < 1e-13);
  }

  TEST_CASE("relative entropy") {
    CHECK(relative_entropy({0.2, 0.7}, {0.2, 0.7}) == doctest::Approx(0.0));
    CHECK(relative_entropy({0.0, 1.0}, {0.5, 0.5}) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(relative_entropy({0.3}, {0.6}) ==
          doctest::Approx(freegas::binary_relative_entropy(0.3, 0.6)));
  }

  TEST_CASE("free state has zero state relative entropy to itself") {
    const ModeBasis b = small_basis();
    const Hamiltonian h = build_hamiltonian(b, small_table());
    const GibbsResult g = gibbs(h.K, h.N, 1.0, 0.5, 2.0 * pi);
    CHECK(std::abs(state_relative_entropy(b, g, 1.0, 0.5)) < 1e-12);
    CHECK(state_relative_entropy(b, g, 1.0, 0.1) > 0.0);
  }
}
