#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/lattice.hpp"

namespace hylab::lattice {

namespace {

// Squared radius in integer units with a relative slack of 1e-12, so that a
// radius meant to sit exactly on a shell (RL/2pi = 1) keeps that shell.
double radius2(double radius) { return radius * radius * (1.0 + 1e-12); }

std::int64_t column_count(std::int64_t rem) {
  if (rem < 0) return 0;
  auto z = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rem)));
  while ((z + 1) * (z + 1) <= rem) ++z;
  while (z * z > rem) --z;
  return 2 * z + 1;
}

}  // namespace

bool within(const IntVec& n, double radius) {
  return static_cast<double>(n.norm2()) <= radius2(radius);
}

std::int64_t count_lattice_points(double R, double L, Execution exec) {
  require(R >= 0.0 && std::isfinite(R), ErrorKind::InvalidInput, "R must be nonnegative");
  require(L > 0.0 && std::isfinite(L), ErrorKind::InvalidInput, "L must be positive");
  const double rho = R / lattice_unit(L);
  require(rho <= kCountBudget, ErrorKind::ResourceLimit, "RL/2pi exceeds the enumeration budget");
  const auto r2 = static_cast<std::int64_t>(std::floor(radius2(rho)));
  const auto n = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(r2)))) + 1;
  std::int64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 16) if (exec == Execution::parallel)
  for (std::int64_t x = -n; x <= n; ++x) {
    for (std::int64_t y = -n; y <= n; ++y) {
      total += column_count(r2 - x * x - y * y);
    }
  }
  return total;
}

MomentumLattice::MomentumLattice(double L, double kmax) : L_(L), kmax_(kmax) {
  require(L > 0.0 && std::isfinite(L), ErrorKind::InvalidInput, "L must be positive");
  require(kmax >= 0.0 && std::isfinite(kmax), ErrorKind::InvalidInput, "kmax must be nonnegative");
  const double rho = kmax / lattice_unit(L);
  require(rho <= 200.0, ErrorKind::ResourceLimit, "lattice enumeration budget exceeded");
  half_ = static_cast<int>(std::floor(rho)) + 1;
  const int side = 2 * half_ + 1;
  lookup_.assign(static_cast<std::size_t>(side) * side * side, -1);
  for (int x = -half_; x <= half_; ++x) {
    for (int y = -half_; y <= half_; ++y) {
      for (int z = -half_; z <= half_; ++z) {
        const IntVec n{x, y, z};
        if (!within(n, rho)) continue;
        const std::size_t slot =
            (static_cast<std::size_t>(x + half_) * side + (y + half_)) * side + (z + half_);
        lookup_[slot] = static_cast<std::int32_t>(modes_.size());
        modes_.push_back(n);
      }
    }
  }
}

long MomentumLattice::index_of(const IntVec& n) const {
  if (std::abs(n.x) > half_ || std::abs(n.y) > half_ || std::abs(n.z) > half_) return -1;
  const std::size_t side = 2 * static_cast<std::size_t>(half_) + 1;
  const std::size_t slot =
      (static_cast<std::size_t>(n.x + half_) * side + (n.y + half_)) * side + (n.z + half_);
  return lookup_[slot];
}

double MomentumLattice::norm(const IntVec& n) const {
  return unit() * std::sqrt(static_cast<double>(n.norm2()));
}

FermiBall fermi_ball(double kF, double L) {
  require(kF >= 0.0, ErrorKind::InvalidInput, "kF must be nonnegative");
  MomentumLattice lat(L, kF);
  FermiBall ball;
  ball.modes = lat.modes();
  ball.count = static_cast<std::int64_t>(ball.modes.size());
  return ball;
}

}  // namespace hylab::lattice
