#include <cmath>
#include <set>

#include "hylab/common/errors.hpp"
#include "hylab/focklab.hpp"

namespace hylab::focklab {

ModeBasis::ModeBasis(double L, double kF, int q, std::vector<IntVec> momenta,
                     std::optional<PartitionParams> partition, std::size_t budget)
    : L_(L), kF_(kF), q_(q), momenta_(std::move(momenta)), partition_(partition) {
  require(L > 0.0 && std::isfinite(L), ErrorKind::InvalidInput, "L must be positive");
  require(kF >= 0.0 && std::isfinite(kF), ErrorKind::InvalidInput, "kF must be nonnegative");
  require(q >= 1, ErrorKind::InvalidInput, "q must be at least 1");
  require(std::set<IntVec>(momenta_.begin(), momenta_.end()).size() == momenta_.size(),
          ErrorKind::InvalidInput, "basis momenta must be distinct");
  const std::size_t m = momenta_.size() * static_cast<std::size_t>(q);
  require(m >= 1, ErrorKind::InvalidInput, "basis needs at least one mode");
  require(m <= budget && m <= 30, ErrorKind::ResourceLimit, "mode count exceeds the budget");

  const double unit = lattice::lattice_unit(L);
  const double rho_f = kF / unit;
  for (const IntVec& k : momenta_) {
    ModeFlags f;
    f.fermi = lattice::within(k, rho_f);
    if (partition_) {
      const PartitionParams& pp = *partition_;
      require(pp.mu_tilde > 0.0 && pp.rho0_tilde > 0.0, ErrorKind::InvalidInput,
              "partition needs mu_tilde > 0 and rho0_tilde > 0");
      const double s = std::sqrt(pp.mu_tilde);
      const double outer_d = (kF + s * std::pow(pp.rho0_tilde, pp.d)) / unit;
      const double outer_4 = (kF + s * std::pow(pp.rho0_tilde, pp.delta4)) / unit;
      const double inner = (kF - s * std::pow(pp.rho0_tilde, pp.delta)) / unit;
      const bool inside_inner = inner >= 0.0 && lattice::within(k, inner);
      f.high = !lattice::within(k, outer_d);
      f.low = !f.fermi && !f.high;
      f.cubic_shell = !f.fermi && lattice::within(k, outer_4);
      f.inner = f.fermi && inside_inner;
      f.surface = f.fermi && !inside_inner;
    }
    for (int s = 0; s < q; ++s) {
      modes_.push_back({k, s});
      flags_.push_back(f);
    }
  }
}

const PartitionParams& ModeBasis::partition() const {
  require(partition_.has_value(), ErrorKind::InvalidInput, "basis has no partition flags");
  return *partition_;
}

long ModeBasis::index_of(const IntVec& k, int spin) const {
  if (spin < 0 || spin >= q_) return -1;
  for (std::size_t i = 0; i < momenta_.size(); ++i) {
    if (momenta_[i] == k) return static_cast<long>(i) * q_ + spin;
  }
  return -1;
}

double ModeBasis::kinetic(std::size_t i) const {
  const double unit = lattice::lattice_unit(L_);
  return unit * unit * static_cast<double>(modes_.at(i).k.norm2());
}

std::size_t ModeBasis::fermi_modes() const {
  std::size_t n = 0;
  for (const ModeFlags& f : flags_) n += f.fermi;
  return n;
}

}  // namespace hylab::focklab
