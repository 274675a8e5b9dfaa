// Microbenchmarks for the hot paths: special functions, the fixed-point
// solve, block diagonalization, propagation, and the spectrum transform.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "nhrm/bessel.hpp"
#include "nhrm/dft.hpp"
#include "nhrm/dynamics.hpp"
#include "nhrm/effective.hpp"
#include "nhrm/floquet.hpp"
#include "nhrm/matrix.hpp"

namespace {

using namespace nhrm;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ModelParams reference_point() { return {1.0, 2.5, 1.0}; }

void bm_bessel_i(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_i(n, x));
    x = x < 40.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(bm_bessel_i)->Arg(0)->Arg(5)->Arg(25);

void bm_solve_alpha(benchmark::State& state) {
  const ModelParams p{1.0, 2.5, 0.5 * static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha(p));
}
BENCHMARK(bm_solve_alpha)->Arg(1)->Arg(6)->Arg(12);

void bm_eig_tridiag(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> diag(n), off(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = Complex(static_cast<double>(i) - 0.5 * static_cast<double>(n),
                      0.0);
  }
  for (auto& v : off) v = Complex(0.0, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(eig_tridiag(diag, off));
}
BENCHMARK(bm_eig_tridiag)->Arg(33)->Arg(129);

void bm_spectrum(benchmark::State& state) {
  FloquetConfig cfg;
  cfg.n_harmonics = static_cast<int>(state.range(0));
  const auto p = reference_point();
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(p, cfg));
}
BENCHMARK(bm_spectrum)->Arg(16)->Arg(64);

void bm_classify(benchmark::State& state) {
  FloquetConfig cfg;
  cfg.n_harmonics = static_cast<int>(state.range(0));
  const ModelParams p{1.0, 2.5, 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(classify(p, cfg));
}
BENCHMARK(bm_classify)->Arg(16)->Arg(64);

void bm_evolve_numeric(benchmark::State& state) {
  const auto p = reference_point();
  const auto psi0 = InitialState::ground();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_numeric(p, psi0, kTwoPi, 64));
  }
}
BENCHMARK(bm_evolve_numeric);

void bm_evolve_closed_form(benchmark::State& state) {
  const auto p = reference_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_closed_form(p, kTwoPi, 64));
  }
}
BENCHMARK(bm_evolve_closed_form);

void bm_dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples[i] = std::sin(0.37 * static_cast<double>(i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(dft_magnitude(samples, 0.1));
}
BENCHMARK(bm_dft)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
