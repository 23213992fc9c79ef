#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "hylab/common/errors.hpp"
#include "hylab/focklab.hpp"

namespace hylab::focklab {

namespace {

double defect(const SparseMatrix& a, double sign) {
  SparseMatrix t = SparseMatrix(a.transpose());
  SparseMatrix d = a - sign * t;
  double m = 0.0;
  for (int j = 0; j < d.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(d, j); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

// Applies a_i (create = false) or a_i^dagger to a basis state. Returns false when the
// result vanishes; otherwise updates the state and flips `sign` by the parity of the
// occupied modes below i.
bool apply(std::uint64_t& state, std::size_t i, bool create, double& sign) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  if (((state & bit) != 0) == create) return false;
  if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
  state ^= bit;
  return true;
}

}  // namespace

FockOperator::FockOperator(SparseMatrix m) : m_(std::move(m)) {
  m_.makeCompressed();
  hermitian_ = m_.rows() == m_.cols() && defect(m_, 1.0) <= kFlagTolerance;
  antihermitian_ = m_.rows() == m_.cols() && defect(m_, -1.0) <= kFlagTolerance;
}

FockOperator FockOperator::adjoint() const { return FockOperator(SparseMatrix(m_.transpose())); }

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  return FockOperator(SparseMatrix(a.m_ + b.m_));
}
FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  return FockOperator(SparseMatrix(a.m_ - b.m_));
}
FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  return FockOperator(SparseMatrix(a.m_ * b.m_));
}
FockOperator operator*(double s, const FockOperator& a) { return FockOperator(SparseMatrix(s * a.m_)); }

double max_abs(const FockOperator& a) {
  double m = 0.0;
  const SparseMatrix& s = a.matrix();
  for (int j = 0; j < s.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(s, j); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double max_abs(const Eigen::MatrixXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

FockOperator commutator(const FockOperator& a, const FockOperator& b) { return a * b - b * a; }
FockOperator anticommutator(const FockOperator& a, const FockOperator& b) { return a * b + b * a; }

FockOperator identity(std::uint64_t dimension) {
  SparseMatrix m(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(dimension));
  m.setIdentity();
  return FockOperator(std::move(m));
}

std::pair<FockOperator, FockOperator> build_ladder(const ModeBasis& basis, std::size_t mode_index) {
  require(mode_index < basis.size(), ErrorKind::InvalidInput, "mode index out of range");
  const std::uint64_t dim = basis.dimension();
  std::vector<Eigen::Triplet<double>> trip;
  for (std::uint64_t s = 0; s < dim; ++s) {
    std::uint64_t t = s;
    double sign = 1.0;
    if (apply(t, mode_index, false, sign)) {
      trip.emplace_back(static_cast<int>(t), static_cast<int>(s), sign);
    }
  }
  SparseMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  a.setFromTriplets(trip.begin(), trip.end());
  FockOperator annihilate(a);
  return {annihilate, annihilate.adjoint()};
}

FockOperator quartic_operator(const ModeBasis& basis, const QuarticCoefficient& coeff) {
  const auto& modes = basis.modes();
  const std::size_t m = modes.size();
  const std::uint64_t dim = basis.dimension();
  std::map<std::pair<IntVec, int>, std::size_t> lookup;
  for (std::size_t i = 0; i < m; ++i) lookup[{modes[i].k, modes[i].spin}] = i;

  std::vector<Eigen::Triplet<double>> trip;
  // a = (p, sigma), b = (q, nu), c = (p - k, sigma), d = (q + k, nu).
  for (std::size_t ia = 0; ia < m; ++ia) {
    const IntVec& p = modes[ia].k;
    const int sigma = modes[ia].spin;
    for (std::size_t ib = 0; ib < m; ++ib) {
      if (ib == ia) continue;
      const IntVec& q = modes[ib].k;
      const int nu = modes[ib].spin;
      for (std::size_t ic = 0; ic < m; ++ic) {
        if (modes[ic].spin != sigma) continue;
        const IntVec k = p - modes[ic].k;
        const auto it = lookup.find({q + k, nu});
        if (it == lookup.end()) continue;
        const std::size_t id = it->second;
        if (id == ic) continue;
        const double c = coeff(k, p, q, sigma, nu);
        if (c == 0.0) continue;
        const std::uint64_t need = (std::uint64_t{1} << ia) | (std::uint64_t{1} << ib);
        for (std::uint64_t s = 0; s < dim; ++s) {
          if ((s & need) != need) continue;
          std::uint64_t t = s;
          double sign = 1.0;
          apply(t, ia, false, sign);
          apply(t, ib, false, sign);
          if (!apply(t, id, true, sign)) continue;
          if (!apply(t, ic, true, sign)) continue;
          trip.emplace_back(static_cast<int>(t), static_cast<int>(s), sign * c);
        }
      }
    }
  }
  SparseMatrix op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  op.setFromTriplets(trip.begin(), trip.end());
  op.prune(0.0);
  return FockOperator(std::move(op));
}

}  // namespace hylab::focklab
