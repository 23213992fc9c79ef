#include <algorithm>
#include <cmath>
#include <random>
#include <vector>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hylab/common/errors.hpp"
#include "hylab/common/numerics.hpp"
#include "hylab/huangyang.hpp"

namespace hylab::huangyang {

std::string to_string(Method m) {
  return m == Method::deterministic ? "deterministic" : "monte-carlo";
}

Method parse_method(const std::string& name) {
  if (name == "deterministic") return Method::deterministic;
  if (name == "monte-carlo" || name == "mc") return Method::monte_carlo;
  fail(ErrorKind::InvalidInput, "unknown integration method '" + name + "'");
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
constexpr unsigned kDepth = 18;

// Reduced form. With S = (p+q)/2 and P = (q-p)/2 (|P| = tau) the pair measure is
// 8 d^3S d^3P; for fixed (S, tau) the admissible directions of P cover the solid
// angle Omega, and the k-integral collapses to a radial integral in r = |k + P|
// whose angular part is the fraction g of the sphere where both p-k and q+k lie
// outside the Fermi ball. The 1/|k|^2 counterterm contributes int_0^{R1} dr and
// the r > R1 = kF + S tail is done in closed form.
struct Reduced {
  double kF;
  double eps0;
  double tol;

  double outside_fraction(double r, double S) const {
    if (S == 0.0) return r > kF ? 1.0 : 0.0;
    return std::clamp((r * r + S * S - kF * kF) / (2.0 * r * S), 0.0, 1.0);
  }

  double solid_angle(double tau, double S) const {
    if (tau == 0.0 || S == 0.0) return 4.0 * pi;
    return 4.0 * pi * std::clamp((kF * kF - tau * tau - S * S) / (2.0 * tau * S), 0.0, 1.0);
  }

  double tail(double R1, double c) const {
    if (c > 0.0) {
      const double s = std::sqrt(c);
      return 0.5 * s * std::log((R1 + s) / (R1 - s));
    }
    if (c < 0.0) {
      const double e = std::sqrt(-c);
      return -e * (0.5 * pi - std::atan(R1 / e));
    }
    return 0.0;
  }

  double k_integral(double tau, double S) const {
    const double R1 = kF + S;
    const double lo = std::sqrt(std::max(0.0, kF * kF - S * S));
    const double c = tau * tau - eps0;
    auto f = [&](double r) { return r * r * outside_fraction(r, S) / (r * r - c); };
    double inner = 0.0;
    if (R1 > lo) inner = GK::integrate(f, lo, R1, kDepth, tol);
    return 4.0 * pi * (R1 - inner - tail(R1, c));
  }

  double pair_integral(double S) const {
    const double tmax = std::sqrt(std::max(0.0, kF * kF - S * S));
    auto f = [&](double tau) { return tau * tau * solid_angle(tau, S) * k_integral(tau, S); };
    const double knee = kF - S;
    if (knee > 0.0 && knee < tmax) {
      return GK::integrate(f, 0.0, knee, kDepth, tol) + GK::integrate(f, knee, tmax, kDepth, tol);
    }
    return GK::integrate(f, 0.0, tmax, kDepth, tol);
  }
};

IntegralResult deterministic(double kF, double eps0, const IntegralOptions& opts) {
  const Reduced red{kF, eps0, opts.tol};
  constexpr int panels = 16;
  std::vector<double> value(panels), error(panels);
#pragma omp parallel for schedule(dynamic, 1) if (opts.exec == Execution::parallel)
  for (int i = 0; i < panels; ++i) {
    const double a = kF * i / panels;
    const double b = kF * (i + 1) / panels;
    double err = 0.0;
    value[i] = GK::integrate([&](double S) { return 32.0 * pi * S * S * red.pair_integral(S); }, a,
                             b, kDepth, opts.tol, &err);
    error[i] = err;
  }
  CompensatedSum v, e;
  for (int i = 0; i < panels; ++i) {
    v.add(value[i]);
    e.add(error[i]);
  }
  IntegralResult res;
  res.method = Method::deterministic;
  res.value = v.value();
  // Outer Kronrod estimate plus the nested tolerances propagated once more.
  res.error_estimate = e.value() + 2.0 * opts.tol * std::abs(res.value);
  return res;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Vec3 {
  double x, y, z;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  Vec3 in_ball(double radius) {
    for (;;) {
      const Vec3 v{2 * uniform() - 1, 2 * uniform() - 1, 2 * uniform() - 1};
      if (v.x * v.x + v.y * v.y + v.z * v.z <= 1.0) {
        return {radius * v.x, radius * v.y, radius * v.z};
      }
    }
  }
  Vec3 direction() {
    const double z = 2 * uniform() - 1;
    const double phi = 2 * pi * uniform();
    const double s = std::sqrt(std::max(0.0, 1 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

 private:
  std::mt19937_64 gen_;
};

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Antithetic estimator: k and -k share (p, q), which pairs the two linearly
// divergent pieces and makes the conditionally convergent k-integral absolutely
// convergent sample by sample. |k| has density k0/(k0+k)^2 with k0 = kF.
IntegralResult monte_carlo(double kF, double eps0, const IntegralOptions& opts) {
  require(opts.samples >= 1000, ErrorKind::InvalidInput, "Monte Carlo needs at least 1000 samples");
  constexpr std::uint64_t chunk = 1u << 16;
  const std::uint64_t chunks = (opts.samples + chunk - 1) / chunk;
  const double vol = 4.0 / 3.0 * pi * kF * kF * kF;
  const double kF2 = kF * kF;
  std::vector<CompensatedSum> sum(chunks), sum2(chunks);
#pragma omp parallel for schedule(dynamic, 1) if (opts.exec == Execution::parallel)
  for (std::uint64_t c = 0; c < chunks; ++c) {
    Sampler rng(splitmix64(opts.seed ^ splitmix64(c)));
    const std::uint64_t n = std::min(chunk, opts.samples - c * chunk);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Vec3 p = rng.in_ball(kF);
      const Vec3 q = rng.in_ball(kF);
      double u = rng.uniform();
      while (u == 0.0) u = rng.uniform();
      const double k = kF * u / (1.0 - u);
      const Vec3 d = rng.direction();
      const Vec3 K{k * d.x, k * d.y, k * d.z};
      const double k2 = k * k;
      const Vec3 qp{q.x - p.x, q.y - p.y, q.z - p.z};
      auto f = [&](double sign) {
        const Vec3 pk{p.x - sign * K.x, p.y - sign * K.y, p.z - sign * K.z};
        const Vec3 qk{q.x + sign * K.x, q.y + sign * K.y, q.z + sign * K.z};
        double val = 1.0 / k2;
        if (dot(pk, pk) > kF2 && dot(qk, qk) > kF2) val -= 1.0 / (k2 + sign * dot(K, qp) + eps0);
        return val;
      };
      const double pdf = kF / ((kF + k) * (kF + k)) / (4.0 * pi * k2);
      const double w = 0.5 * (f(1.0) + f(-1.0)) / pdf * vol * vol;
      sum[c].add(w);
      sum2[c].add(w * w);
    }
  }
  CompensatedSum s, s2;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s.merge(sum[c]);
    s2.merge(sum2[c]);
  }
  const double n = static_cast<double>(opts.samples);
  const double mean = s.value() / n;
  const double var = std::max(0.0, s2.value() / n - mean * mean);
  IntegralResult res;
  res.method = Method::monte_carlo;
  res.value = mean;
  res.error_estimate = std::sqrt(var / n);
  res.seed = opts.seed;
  res.samples = opts.samples;
  return res;
}

}  // namespace

IntegralResult hy_integral(double kF, double epsilon0, const IntegralOptions& opts) {
  require(kF > 0.0 && std::isfinite(kF), ErrorKind::InvalidInput, "kF must be positive");
  require(epsilon0 >= 0.0 && std::isfinite(epsilon0), ErrorKind::InvalidInput,
          "epsilon0 must be nonnegative");
  require(opts.tol > 0.0 && opts.budget > 0.0, ErrorKind::InvalidInput,
          "tolerance and budget must be positive");
  IntegralResult res = opts.method == Method::deterministic ? deterministic(kF, epsilon0, opts)
                                                            : monte_carlo(kF, epsilon0, opts);
  if (res.error_estimate > opts.budget * std::abs(res.value)) {
    fail(ErrorKind::AccuracyFailure, "integral error estimate exceeds the budget");
  }
  return res;
}

}  // namespace hylab::huangyang
