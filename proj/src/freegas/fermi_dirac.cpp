#include <cmath>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hylab/common/errors.hpp"
#include "hylab/freegas.hpp"

namespace hylab::freegas {

namespace {

constexpr double kQuadTol = 1e-15;

double series(double s, double x) {
  // Alternating series in e^{x}; x <= -2 makes every term below e^{-2n}.
  double sum = 0.0;
  double term_exp = std::exp(x);
  double power = term_exp;
  for (int n = 1; n < 200; ++n) {
    const double term = power * std::pow(static_cast<double>(n), -s - 1.0);
    sum += (n % 2 == 1) ? term : -term;
    if (term < 1e-18 * std::abs(sum)) break;
    power *= term_exp;
  }
  return sum;
}

// Direct quadrature with t = u^2, which removes the t^s endpoint behaviour for s >= -1/2.
double quadrature(double s, double x) {
  auto integrand = [&](double u) {
    const double t = u * u;
    const double e = t - x;
    if (e > 700.0) return 0.0;
    const double occ = e > 0 ? std::exp(-e) / (1.0 + std::exp(-e)) : 1.0 / (1.0 + std::exp(e));
    return 2.0 * std::pow(u, 2.0 * s + 1.0) * occ;
  };
  const double split = std::sqrt(std::max(x, 0.0) + 4.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double head = ts.integrate(integrand, 0.0, split, kQuadTol);
  const double tail = es.integrate(integrand, split, std::numeric_limits<double>::infinity(), kQuadTol);
  return (head + tail) / std::tgamma(s + 1.0);
}

// Degenerate regime: leading x^{s+1}/Gamma(s+2) plus the exact correction
// [int_0^inf (x+y)^s/(1+e^y) dy - int_0^x (x-y)^s/(1+e^y) dy] / Gamma(s+1).
double degenerate(double s, double x) {
  auto above = [&](double y) {
    if (y > 700.0) return 0.0;
    return std::pow(x + y, s) / (1.0 + std::exp(y));
  };
  auto below = [&](double y) { return std::pow(x - y, s) / (1.0 + std::exp(y)); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double a = es.integrate(above, 0.0, std::numeric_limits<double>::infinity(), kQuadTol);
  const double b = ts.integrate(below, 0.0, std::min(x, 90.0), kQuadTol);
  return std::pow(x, s + 1.0) / std::tgamma(s + 2.0) + (a - b) / std::tgamma(s + 1.0);
}

double sommerfeld(double s, double x) {
  const double pi2 = M_PI * M_PI;
  const double c2 = pi2 / 6.0 * s * (s + 1.0);
  const double c4 = 7.0 * pi2 * pi2 / 360.0 * s * (s + 1.0) * (s - 1.0) * (s - 2.0);
  return std::pow(x, s + 1.0) / std::tgamma(s + 2.0) * (1.0 + c2 / (x * x) + c4 / (x * x * x * x));
}

}  // namespace

double fermi_dirac_F(double s, double x, bool asymptotic_fallback) {
  require(s > -1.0, ErrorKind::InvalidInput, "Fermi-Dirac order must exceed -1");
  require(std::isfinite(x), ErrorKind::InvalidInput, "Fermi-Dirac argument must be finite");
  if (std::abs(x) > 700.0) {
    if (!asymptotic_fallback) {
      fail(ErrorKind::RangeError, "|x| > 700 in Fermi-Dirac integral (asymptotic fallback available)");
    }
    return x < 0.0 ? std::exp(x) : sommerfeld(s, x);
  }
  if (x <= -2.0) return series(s, x);
  if (x < 30.0) return quadrature(s, x);
  return degenerate(s, x);
}

}  // namespace hylab::freegas
