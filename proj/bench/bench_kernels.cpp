// Serial reference kernels against their OpenMP versions. Arg 0 selects serial, 1 parallel.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "hylab/huangyang.hpp"
#include "hylab/lattice.hpp"

using namespace hylab;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

const scattering::RadialPotential& well() {
  static const auto v = scattering::RadialPotential::square_well(1.0, 1.0);
  return v;
}

const scattering::ScatteringSolution& solution() {
  static const auto s = scattering::solve_neumann(well(), 3.0);
  return s;
}

void BM_CountLatticePoints(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lattice::count_lattice_points(300.0, 2.0 * std::numbers::pi, exec_of(st)));
}

void BM_BuildTables(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lattice::build_tables(solution(), well(), 8.0, 16.0, exec_of(st)));
}

void BM_ScatteringResidual(benchmark::State& st) {
  static const auto tab = lattice::build_tables(solution(), well(), 8.0, 16.0);
  for (auto _ : st) benchmark::DoNotOptimize(lattice::scattering_residual(tab, 8.0, 2.0, exec_of(st)));
}

void BM_MonteCarloIntegral(benchmark::State& st) {
  huangyang::IntegralOptions o;
  o.method = huangyang::Method::monte_carlo;
  o.samples = 200'000;
  o.budget = 0.1;
  o.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(huangyang::hy_integral(1.0, 0.0, o));
}

void BM_ConstantSums(benchmark::State& st) {
  const double rho = 0.05;
  const double kF = std::cbrt(6.0 * std::numbers::pi * std::numbers::pi * rho / 2.0);
  const auto ex = lattice::Exponents::from_d(1.0 / 9.0);
  static const auto cut = lattice::build_cutoffs({ex, rho, kF * kF});
  static const auto sol = scattering::solve_neumann(well(), std::pow(rho, -1.0 / 3.0 + ex.alpha3));
  const double L = 2.0 * std::numbers::pi * 3.0 / kF;
  static const auto tab = lattice::build_tables(
      sol, well(), L, std::max(cut.zeta.outer(), cut.zeta_tilde.outer()) + 2.0 * kF + 1e-9);
  for (auto _ : st) {
    benchmark::DoNotOptimize(huangyang::renorm_constant_sums(tab, cut, kF, rho * rho, 2, 100'000, exec_of(st)));
  }
}

}  // namespace

BENCHMARK(BM_CountLatticePoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTables)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScatteringResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConstantSums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
