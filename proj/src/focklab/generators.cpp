#include <cmath>
#include <complex>

#include "hylab/common/errors.hpp"
#include "hylab/focklab.hpp"

namespace hylab::focklab {

FockOperator build_pair_operator(GeneratorKind kind, const ModeBasis& basis,
                                 const GeneratorInputs& in) {
  require(in.tab != nullptr && in.cut != nullptr, ErrorKind::InvalidInput,
          "generators need coefficient tables and cutoffs");
  const lattice::CoefficientTable& tab = *in.tab;
  const lattice::Cutoffs& cut = *in.cut;
  require(std::abs(tab.L - basis.L()) <= 1e-12 * basis.L(), ErrorKind::InvalidInput,
          "coefficient table and basis use different L");
  const double unit = tab.unit();
  const double rho_f = basis.kF() / unit;
  auto in_ball = [rho_f](const IntVec& k) { return lattice::within(k, rho_f); };
  auto norm = [unit](const IntVec& k) { return unit * std::sqrt(static_cast<double>(k.norm2())); };

  switch (kind) {
    case GeneratorKind::B:
      return quartic_operator(basis, [&](const IntVec& k, const IntVec& p, const IntVec& q, int, int) {
        if (!in_ball(p) || !in_ball(q) || in_ball(p - k) || in_ball(q + k)) return 0.0;
        return tab.eta(k) * cut.phi.plus(norm(k));
      });
    case GeneratorKind::Bprime: {
      require(basis.has_partition(), ErrorKind::InvalidInput,
              "the cubic generator needs the A_F shell flags");
      const auto& flags = basis.flags();
      return quartic_operator(basis, [&](const IntVec& k, const IntVec& p, const IntVec& q, int, int nu) {
        if (!in_ball(p) || in_ball(p - k) || in_ball(q + k)) return 0.0;
        if (!flags[static_cast<std::size_t>(basis.index_of(q, nu))].cubic_shell) return 0.0;
        const double kr = norm(k);
        return tab.eta(k) * cut.phi.plus(kr) * cut.zeta.minus(kr);
      });
    }
    case GeneratorKind::Btilde:
      require(in.epsilon0 > 0.0, ErrorKind::InvalidInput, "the Bogoliubov generator needs epsilon0 > 0");
      return quartic_operator(basis, [&](const IntVec& k, const IntVec& p, const IntVec& q, int, int) {
        return lattice::bogoliubov_xi(tab, cut, k, q, p, basis.kF(), in.epsilon0);
      });
  }
  fail(ErrorKind::InvalidInput, "unknown generator kind");
}

FockOperator build_generator(GeneratorKind kind, const ModeBasis& basis, const GeneratorInputs& in) {
  const FockOperator a = build_pair_operator(kind, basis, in);
  const double scale = kind == GeneratorKind::Bprime ? 1.0 : 0.5;
  return scale * (a - a.adjoint());
}

namespace {

struct SkewEigen {
  Eigen::MatrixXcd U;
  Eigen::VectorXd d;  // iB = U diag(d) U*
};

SkewEigen skew_eigen(const FockOperator& B, std::size_t budget) {
  require(static_cast<std::size_t>(B.dimension()) <= budget, ErrorKind::ResourceLimit,
          "dense exponential exceeds the dimension budget");
  require(B.antihermitian(), ErrorKind::InvalidInput, "generator must be antihermitian");
  const Eigen::MatrixXcd iB = std::complex<double>(0.0, 1.0) * B.dense().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(iB);
  require(es.info() == Eigen::Success, ErrorKind::SolverFailure, "eigensolver failed on iB");
  return {es.eigenvectors(), es.eigenvalues()};
}

Eigen::MatrixXcd phase_exp(const SkewEigen& e, double sign) {
  // e^{sign B} = U e^{-i sign d} U*
  const Eigen::VectorXcd ph =
      (std::complex<double>(0.0, -sign) * e.d.cast<std::complex<double>>()).array().exp();
  return e.U * ph.asDiagonal() * e.U.adjoint();
}

}  // namespace

Eigen::MatrixXcd exp_antihermitian(const FockOperator& B, std::size_t dense_budget) {
  return phase_exp(skew_eigen(B, dense_budget), 1.0);
}

FockOperator conjugate(const FockOperator& H, const FockOperator& B, std::size_t dense_budget) {
  require(H.dimension() == B.dimension(), ErrorKind::InvalidInput, "H and B dimensions differ");
  const SkewEigen e = skew_eigen(B, dense_budget);
  const Eigen::MatrixXcd U = phase_exp(e, 1.0);
  const Eigen::MatrixXcd out = U.adjoint() * H.dense().cast<std::complex<double>>() * U;
  const double scale = std::max(1.0, max_abs(H));
  require(out.imag().cwiseAbs().maxCoeff() <= 1e-10 * scale, ErrorKind::SolverFailure,
          "conjugated operator is not real");
  Eigen::MatrixXd r = out.real();
  if (H.hermitian()) r = 0.5 * (r + r.transpose()).eval();
  return FockOperator(r.sparseView());
}

std::vector<double> spectrum(const FockOperator& H, std::size_t dense_budget) {
  require(static_cast<std::size_t>(H.dimension()) <= dense_budget, ErrorKind::ResourceLimit,
          "dense spectrum exceeds the dimension budget");
  require(H.hermitian(), ErrorKind::InvalidInput, "spectrum needs a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.dense(), Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::SolverFailure, "eigensolver failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace hylab::focklab
