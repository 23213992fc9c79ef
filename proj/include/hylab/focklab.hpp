#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hylab/lattice.hpp"

namespace hylab::focklab {

using lattice::IntVec;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// One-particle mode (k, sigma); spins run over 0..q-1.
struct Mode {
  IntVec k;
  int spin = 0;
};

/// Scales of the momentum shells around the Fermi surface.
struct PartitionParams {
  double mu_tilde = 0.0;
  double rho0_tilde = 0.0;
  double d = 0.0;       // P_{F,d} and A_{F,d}
  double delta = 0.0;   // surface and inner shells below kF
  double delta4 = 0.0;  // A_{F,delta4}, used by the cubic generator
};

struct ModeFlags {
  bool fermi = false;    // |k| <= kF
  bool high = false;     // |k| > kF + mu~^{1/2} rho~^d
  bool low = false;      // kF < |k| <= kF + mu~^{1/2} rho~^d
  bool surface = false;  // kF - mu~^{1/2} rho~^delta < |k| <= kF
  bool inner = false;    // |k| <= kF - mu~^{1/2} rho~^delta
  bool cubic_shell = false;  // kF < |k| <= kF + mu~^{1/2} rho~^delta4
};

/// Finite set of modes spanning a 2^M dimensional Fock space. Modes are stored
/// momentum-major: every momentum is followed by its q spin states.
class ModeBasis {
 public:
  static constexpr std::size_t kDefaultBudget = 16;

  ModeBasis(double L, double kF, int q, std::vector<IntVec> momenta,
            std::optional<PartitionParams> partition = std::nullopt,
            std::size_t budget = kDefaultBudget);

  double L() const { return L_; }
  double kF() const { return kF_; }
  int q() const { return q_; }
  std::size_t size() const { return modes_.size(); }
  std::uint64_t dimension() const { return std::uint64_t{1} << modes_.size(); }
  const std::vector<Mode>& modes() const { return modes_; }
  const std::vector<ModeFlags>& flags() const { return flags_; }
  const std::vector<IntVec>& momenta() const { return momenta_; }
  bool has_partition() const { return partition_.has_value(); }
  const PartitionParams& partition() const;
  /// Index of (k, spin), or -1 when the mode is not in the basis.
  long index_of(const IntVec& k, int spin) const;
  /// |k|^2 of mode i in physical units.
  double kinetic(std::size_t i) const;
  /// Number of in-basis modes inside the Fermi ball, summed over spins.
  std::size_t fermi_modes() const;

 private:
  double L_;
  double kF_;
  int q_;
  std::vector<IntVec> momenta_;
  std::vector<Mode> modes_;
  std::vector<ModeFlags> flags_;
  std::optional<PartitionParams> partition_;
};

/// Operator on the truncated Fock space in the occupation-number basis.
/// Matrices are real: every coefficient of the model is real.
class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(SparseMatrix m);

  const SparseMatrix& matrix() const { return m_; }
  std::int64_t dimension() const { return m_.rows(); }
  bool hermitian() const { return hermitian_; }
  bool antihermitian() const { return antihermitian_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(m_); }
  FockOperator adjoint() const;

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(double s, const FockOperator& a);

 private:
  SparseMatrix m_;
  bool hermitian_ = false;
  bool antihermitian_ = false;
};

inline constexpr double kFlagTolerance = 1e-13;

/// Largest entry of |A|; zero for an empty operator.
double max_abs(const FockOperator& a);
double max_abs(const Eigen::MatrixXd& a);
FockOperator commutator(const FockOperator& a, const FockOperator& b);
FockOperator anticommutator(const FockOperator& a, const FockOperator& b);
FockOperator identity(std::uint64_t dimension);

/// (a_i, a_i^dagger) with the Jordan-Wigner sign (-1)^{#occupied modes before i}.
std::pair<FockOperator, FockOperator> build_ladder(const ModeBasis& basis, std::size_t mode_index);

/// Coefficient of a*_{p-k,sigma} a*_{q+k,nu} a_{q,nu} a_{p,sigma}; receives (k, p, q, sigma, nu).
using QuarticCoefficient =
    std::function<double(const IntVec&, const IntVec&, const IntVec&, int, int)>;

/// Sum of the quartic monomials over every (k, p, q, sigma, nu) whose four modes lie in
/// the basis.
FockOperator quartic_operator(const ModeBasis& basis, const QuarticCoefficient& coeff);

struct Hamiltonian {
  FockOperator K;
  FockOperator V;
  FockOperator N;
  FockOperator H() const { return K + V; }
};

Hamiltonian build_hamiltonian(const ModeBasis& basis, const lattice::CoefficientTable& tab);

struct PotentialSplit {
  FockOperator V0, V1, V21, V22, V23, V3, V4;
  /// max |V - sum of parts|
  double residual = 0.0;
  FockOperator sum() const { return V0 + V1 + V21 + V22 + V23 + V3 + V4; }
};

PotentialSplit split_potential(const ModeBasis& basis, const lattice::CoefficientTable& tab);

struct GibbsResult {
  double pressure = 0.0;
  double log_partition = 0.0;
  std::vector<double> one_pdm;  // per mode of the basis
  double entropy = 0.0;         // -Tr Gamma ln Gamma
  double mean_N = 0.0;          // sum of one_pdm
  double trace_N = 0.0;         // Tr(N Gamma) with the N passed in
  std::size_t blocks = 0;
  std::size_t largest_block = 0;
};

inline constexpr std::size_t kDenseBlockBudget = 4096;

/// Grand-canonical Gibbs state of H - mu N. The matrix is split into the connected
/// components of its sparsity graph, each diagonalised densely.
GibbsResult gibbs(const FockOperator& H, const FockOperator& N, double beta, double mu, double L,
                  std::size_t block_budget = kDenseBlockBudget);

/// Closed forms for v = 0: (1/L^3 beta) sum ln(1 + z e^{-beta|k|^2}) and the Fermi-Dirac
/// occupations of the basis modes.
double free_pressure(const ModeBasis& basis, double beta, double mu);
std::vector<double> free_occupations(const ModeBasis& basis, double beta, double mu);

/// S(gamma, gamma0) = sum gamma ln(gamma/gamma0) + (1-gamma) ln((1-gamma)/(1-gamma0)).
double relative_entropy(const std::vector<double>& gamma, const std::vector<double>& gamma0);

/// S(Gamma, G~0) = beta L^3 (P~0[G~0] - P~0[Gamma]) for the free Gibbs state G~0 at
/// (beta, mu_tilde), evaluated from the one-pdm and von Neumann entropy of Gamma.
double state_relative_entropy(const ModeBasis& basis, const GibbsResult& g, double beta,
                              double mu_tilde);

struct ParticleOps {
  FockOperator N;
  FockOperator N_re;
  FockOperator N_re_tilde;
  FockOperator N_high;
  FockOperator N_low;
  FockOperator N_surface;
  FockOperator N_inner;
};

ParticleOps particle_ops(const ModeBasis& basis);

enum class GeneratorKind { B, Bprime, Btilde };

struct GeneratorInputs {
  const lattice::CoefficientTable* tab = nullptr;
  const lattice::Cutoffs* cut = nullptr;
  double epsilon0 = 0.0;
};

/// The pair-creation operator A, A' or A~ behind each generator.
FockOperator build_pair_operator(GeneratorKind kind, const ModeBasis& basis,
                                 const GeneratorInputs& in);
/// B = (A - A*)/2, B' = A' - A'*, B~ = (A~ - A~*)/2.
FockOperator build_generator(GeneratorKind kind, const ModeBasis& basis, const GeneratorInputs& in);

/// e^{-B} H e^{B} through the eigendecomposition of the Hermitian matrix iB.
FockOperator conjugate(const FockOperator& H, const FockOperator& B,
                       std::size_t dense_budget = kDenseBlockBudget);
/// e^{B} as a dense complex matrix, for unitarity checks.
Eigen::MatrixXcd exp_antihermitian(const FockOperator& B, std::size_t dense_budget = kDenseBlockBudget);

std::vector<double> spectrum(const FockOperator& H, std::size_t dense_budget = kDenseBlockBudget);

}  // namespace hylab::focklab
