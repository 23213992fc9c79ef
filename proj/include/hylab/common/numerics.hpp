#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace hylab {

inline constexpr double pi = std::numbers::pi;

/// Neumaier-compensated accumulator. Associative reductions over chunks use
/// `merge` so that parallel and serial sums agree to rounding.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct PowerFit {
  double exponent = 0.0;   // slope in log-log space
  double prefactor = 0.0;  // exp(intercept)
};

/// Least-squares fit of log|y| = log c + e log x.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule) {
  const double h = (b - a) / panels;
  CompensatedSum acc;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + h * i;
    const double mid = lo + 0.5 * h;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      acc.add(0.5 * h * rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]));
    }
  }
  return acc.value();
}

/// sin(x)/x with the removable singularity handled.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// ln(1 + e^y) without overflow.
inline double log1p_exp(double y) {
  if (y > 0.0) return y + std::log1p(std::exp(-y));
  return std::log1p(std::exp(y));
}

}  // namespace hylab
