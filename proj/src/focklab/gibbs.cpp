#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/focklab.hpp"

namespace hylab::focklab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Block {
  std::vector<std::size_t> states;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
};

}  // namespace

GibbsResult gibbs(const FockOperator& H, const FockOperator& N, double beta, double mu, double L,
                  std::size_t block_budget) {
  require(beta > 0.0 && std::isfinite(beta), ErrorKind::InvalidInput, "beta must be positive");
  require(std::isfinite(mu) && L > 0.0, ErrorKind::InvalidInput, "need finite mu and L > 0");
  require(H.dimension() == N.dimension(), ErrorKind::InvalidInput, "H and N dimensions differ");
  require(H.hermitian() && N.hermitian(), ErrorKind::InvalidInput, "H and N must be Hermitian");
  const FockOperator HN = commutator(H, N);
  require(max_abs(HN) <= 1e-10 * std::max(1.0, max_abs(H)), ErrorKind::InvalidInput,
          "H and N do not commute");
  const auto dim = static_cast<std::size_t>(H.dimension());
  std::size_t modes = 0;
  while ((std::size_t{1} << modes) < dim) ++modes;
  require((std::size_t{1} << modes) == dim, ErrorKind::InvalidInput,
          "operator dimension is not a power of two");

  const SparseMatrix G = H.matrix() - mu * N.matrix();
  UnionFind uf(dim);
  for (int j = 0; j < G.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(G, j); it; ++it) {
      if (it.value() != 0.0) uf.unite(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(j));
    }
  }
  std::vector<std::size_t> root_index(dim, dim);
  std::vector<Block> blocks;
  for (std::size_t s = 0; s < dim; ++s) {
    const std::size_t r = uf.find(s);
    if (root_index[r] == dim) {
      root_index[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[root_index[r]].states.push_back(s);
  }

  GibbsResult res;
  res.blocks = blocks.size();
  std::vector<std::size_t> local(dim);
  double emin = std::numeric_limits<double>::infinity();
  for (Block& b : blocks) {
    const std::size_t n = b.states.size();
    res.largest_block = std::max(res.largest_block, n);
    require(n <= block_budget, ErrorKind::ResourceLimit, "Gibbs block exceeds the dense budget");
    for (std::size_t i = 0; i < n; ++i) local[b.states[i]] = i;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
      for (SparseMatrix::InnerIterator it(G, static_cast<int>(b.states[c])); it; ++it) {
        g(static_cast<Eigen::Index>(local[static_cast<std::size_t>(it.row())]), static_cast<Eigen::Index>(c)) =
            it.value();
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    require(es.info() == Eigen::Success, ErrorKind::SolverFailure, "block eigensolver failed");
    b.energies = es.eigenvalues();
    b.vectors = es.eigenvectors();
    emin = std::min(emin, b.energies.minCoeff());
  }

  CompensatedSum z;
  for (const Block& b : blocks) {
    for (Eigen::Index j = 0; j < b.energies.size(); ++j) z.add(std::exp(-beta * (b.energies[j] - emin)));
  }
  res.log_partition = std::log(z.value()) - beta * emin;
  res.pressure = res.log_partition / (beta * L * L * L);

  std::vector<CompensatedSum> occ(modes);
  CompensatedSum entropy, trace_n;
  for (const Block& b : blocks) {
    const std::size_t n = b.states.size();
    for (std::size_t i = 0; i < n; ++i) local[b.states[i]] = i;
    for (Eigen::Index j = 0; j < b.energies.size(); ++j) {
      const double lw = -beta * b.energies[j] - res.log_partition;
      const double w = std::exp(lw);
      if (w == 0.0) continue;
      entropy.add(-w * lw);
      const Eigen::VectorXd psi = b.vectors.col(j);
      double nexp = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        const double amp = psi[static_cast<Eigen::Index>(c)];
        if (amp == 0.0) continue;
        const std::size_t s = b.states[c];
        for (std::size_t i = 0; i < modes; ++i) {
          if (s >> i & 1) occ[i].add(w * amp * amp);
        }
        for (SparseMatrix::InnerIterator it(N.matrix(), static_cast<int>(s)); it; ++it) {
          const std::size_t r = static_cast<std::size_t>(it.row());
          if (uf.find(r) != uf.find(s)) continue;
          nexp += psi[static_cast<Eigen::Index>(local[r])] * it.value() * amp;
        }
      }
      trace_n.add(w * nexp);
    }
  }
  res.one_pdm.resize(modes);
  CompensatedSum mean;
  for (std::size_t i = 0; i < modes; ++i) {
    res.one_pdm[i] = std::clamp(occ[i].value(), 0.0, 1.0);
    mean.add(res.one_pdm[i]);
  }
  res.mean_N = mean.value();
  res.trace_N = trace_n.value();
  res.entropy = std::max(0.0, entropy.value());
  return res;
}

double free_pressure(const ModeBasis& basis, double beta, double mu) {
  require(beta > 0.0, ErrorKind::InvalidInput, "beta must be positive");
  CompensatedSum s;
  for (std::size_t i = 0; i < basis.size(); ++i) s.add(log1p_exp(-beta * (basis.kinetic(i) - mu)));
  const double L = basis.L();
  return s.value() / (beta * L * L * L);
}

std::vector<double> free_occupations(const ModeBasis& basis, double beta, double mu) {
  std::vector<double> g(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    g[i] = 1.0 / (1.0 + std::exp(beta * (basis.kinetic(i) - mu)));
  }
  return g;
}

double relative_entropy(const std::vector<double>& gamma, const std::vector<double>& gamma0) {
  require(gamma.size() == gamma0.size(), ErrorKind::InvalidInput, "occupation maps differ in size");
  CompensatedSum s;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const double t = gamma[i];
    const double t0 = gamma0[i];
    require(t >= 0.0 && t <= 1.0, ErrorKind::InvalidInput, "gamma must lie in [0, 1]");
    require(t0 > 0.0 && t0 < 1.0, ErrorKind::InvalidInput, "gamma0 must lie strictly inside (0, 1)");
    if (t > 0.0) s.add(t * std::log(t / t0));
    if (t < 1.0) s.add((1.0 - t) * std::log((1.0 - t) / (1.0 - t0)));
  }
  return s.value();
}

double state_relative_entropy(const ModeBasis& basis, const GibbsResult& g, double beta,
                              double mu_tilde) {
  require(g.one_pdm.size() == basis.size(), ErrorKind::InvalidInput, "one-pdm does not match basis");
  const double vol = basis.L() * basis.L() * basis.L();
  // -L^3 P~0[Gamma] = Tr((K - mu~ N) Gamma) - S[Gamma]/beta
  CompensatedSum energy;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    energy.add((basis.kinetic(i) - mu_tilde) * g.one_pdm[i]);
  }
  const double p_gamma = -(energy.value() - g.entropy / beta) / vol;
  const double p_free = free_pressure(basis, beta, mu_tilde);
  return beta * vol * (p_free - p_gamma);
}

}  // namespace hylab::focklab
