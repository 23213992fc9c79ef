#include <algorithm>
#include <cmath>

#include "hylab/common/errors.hpp"
#include "hylab/lattice.hpp"

namespace hylab::lattice {

Exponents Exponents::from_d(double d) {
  require(d > 0.0 && d <= 1.0 / 9.0, ErrorKind::InvalidInput, "d must lie in (0, 1/9]");
  Exponents e;
  e.d = d;
  e.delta4 = e.delta1 = 1.0 / 6.0 + d / 10.0;
  e.delta2 = 1.0 / 6.0 - 0.75 * d;
  e.delta3 = 1.0 / 24.0 + 3.0 * d / 160.0;
  e.alpha3 = 1.0 / 12.0 + d / 40.0;
  e.alpha6 = 1.0 / 6.0 + 3.0 * d / 50.0;
  e.alpha2 = d / 160.0;
  e.alpha5 = d / 180.0;
  e.alpha4 = d / 400.0;
  e.epsilon = d / 800.0;
  return e;
}

Exponents Exponents::from_alpha1(double alpha1) {
  require(alpha1 > 1.0 / 6.0, ErrorKind::InvalidInput, "alpha1 must exceed 1/6");
  return from_d(std::min(alpha1 - 1.0 / 6.0, 1.0 / 9.0));
}

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

RadialCutoff::RadialCutoff(double inner, double outer) : inner_(inner), outer_(outer) {
  require(std::isfinite(inner) && std::isfinite(outer) && inner >= 0.0 && inner < outer,
          ErrorKind::InvalidInput, "cutoff needs 0 <= inner < outer");
}

double RadialCutoff::minus(double r) const {
  if (r <= inner_) return 1.0;
  if (r >= outer_) return 0.0;
  return 1.0 - smoothstep5((r - inner_) / (outer_ - inner_));
}

double RadialCutoff::dminus(double r) const {
  if (r <= inner_ || r >= outer_) return 0.0;
  const double w = outer_ - inner_;
  const double t = (r - inner_) / w;
  return -30.0 * t * t * (1.0 - t) * (1.0 - t) / w;
}

Cutoffs build_cutoffs(const CutoffFamily& fam) {
  require(fam.rho0_tilde > 0.0 && fam.mu_tilde > 0.0, ErrorKind::InvalidInput,
          "cutoffs need rho0_tilde > 0 and mu_tilde > 0");
  const double s = std::sqrt(fam.mu_tilde);
  const double rho = fam.rho0_tilde;
  auto momentum = [&](double exponent) {
    const double scale = s * std::pow(rho, -exponent);
    return RadialCutoff(1.5 * scale, 2.0 * scale);
  };
  Cutoffs c;
  c.phi = momentum(fam.exps.alpha2);
  c.zeta = momentum(fam.exps.beta1());
  c.zeta_tilde = momentum(fam.exps.alpha6);
  c.gamma = momentum(fam.exps.delta3);
  const double x = std::pow(rho, -1.0 / 3.0);
  c.theta = RadialCutoff(0.5 * x, x);
  return c;
}

}  // namespace hylab::lattice
