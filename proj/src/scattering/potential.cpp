#include <algorithm>
#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/scattering.hpp"

namespace hylab::scattering {

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::SquareWell: return "square-well";
    case PotentialKind::GaussianBump: return "gaussian-bump";
    case PotentialKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(const std::string& name) {
  if (name == "square-well") return PotentialKind::SquareWell;
  if (name == "gaussian-bump") return PotentialKind::GaussianBump;
  if (name == "tabulated") return PotentialKind::Tabulated;
  fail(ErrorKind::InvalidInput, "unknown potential kind '" + name + "'");
}

namespace {

void check_params(double strength, double range) {
  require(std::isfinite(strength) && strength >= 0.0, ErrorKind::InvalidInput,
          "potential strength must be finite and nonnegative");
  require(std::isfinite(range) && range > 0.0, ErrorKind::InvalidInput,
          "potential range must be finite and positive");
}

}  // namespace

RadialPotential RadialPotential::zero() { return RadialPotential{}; }

RadialPotential RadialPotential::square_well(double strength, double range) {
  check_params(strength, range);
  RadialPotential v;
  v.kind_ = PotentialKind::SquareWell;
  v.strength_ = strength;
  v.range_ = range;
  v.support_ = strength > 0.0 ? range : 0.0;
  return v;
}

RadialPotential RadialPotential::gaussian_bump(double strength, double range) {
  check_params(strength, range);
  RadialPotential v = square_well(strength, range);
  v.kind_ = PotentialKind::GaussianBump;
  return v;
}

RadialPotential RadialPotential::tabulated(std::vector<double> radii, std::vector<double> values) {
  require(radii.size() == values.size() && radii.size() >= 2, ErrorKind::InvalidInput,
          "tabulated potential needs at least two (r, v) samples");
  require(radii.front() == 0.0, ErrorKind::InvalidInput, "tabulated potential must start at r = 0");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(std::isfinite(values[i]) && values[i] >= 0.0, ErrorKind::InvalidInput,
            "tabulated potential has a negative sample");
    if (i > 0) {
      require(radii[i] > radii[i - 1], ErrorKind::InvalidInput,
              "tabulated radii must be strictly increasing");
    }
  }
  require(values.back() == 0.0, ErrorKind::InvalidInput,
          "tabulated potential must vanish at its last radius");
  RadialPotential v;
  v.kind_ = PotentialKind::Tabulated;
  v.strength_ = 0.5 * *std::max_element(values.begin(), values.end());
  v.range_ = radii.back();
  v.support_ = v.strength_ > 0.0 ? radii.back() : 0.0;
  v.radii_ = std::move(radii);
  v.values_ = std::move(values);
  return v;
}

double RadialPotential::operator()(double r) const {
  if (support_ == 0.0 || r > support_ || r < 0.0) return 0.0;
  switch (kind_) {
    case PotentialKind::SquareWell:
      return 2.0 * strength_;
    case PotentialKind::GaussianBump: {
      const double x = r / range_;
      if (x >= 1.0) return 0.0;
      return 2.0 * strength_ * std::exp(1.0 - 1.0 / (1.0 - x * x));
    }
    case PotentialKind::Tabulated: {
      const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
      if (it == radii_.end()) return values_.back();
      const std::size_t hi = static_cast<std::size_t>(it - radii_.begin());
      const std::size_t lo = hi - 1;
      const double t = (r - radii_[lo]) / (radii_[hi] - radii_[lo]);
      return values_[lo] + t * (values_[hi] - values_[lo]);
    }
  }
  return 0.0;
}

}  // namespace hylab::scattering
