#include <benchmark/benchmark.h>

#include "toda/characters.hpp"
#include "toda/difference.hpp"
#include "toda/dynamics.hpp"
#include "toda/lax.hpp"
#include "toda/matrix_elements.hpp"
#include "toda/quantum.hpp"
#include "toda/spectral.hpp"

namespace {

toda::PhasePoint chain(int n) {
  toda::PhasePoint x;
  for (int i = 0; i < n; ++i) {
    x.p.push_back(0.3 * std::sin(1.7 * i + 0.4));
    x.q.push_back(0.2 * std::cos(2.3 * i));
  }
  return x;
}

void BM_Monodromy(benchmark::State& st) {
  const toda::PhasePoint x = chain(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(toda::conserved_poly(toda::build_monodromy(x)));
}
BENCHMARK(BM_Monodromy)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_PeriodMatrix(benchmark::State& st) {
  const toda::SpectralData s =
      toda::build_spectral(toda::conserved_poly(toda::build_monodromy(chain(static_cast<int>(st.range(0))))));
  for (auto _ : st) benchmark::DoNotOptimize(toda::period_matrix(s));
}
BENCHMARK(BM_PeriodMatrix)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_HamiltonianFlow(benchmark::State& st) {
  const toda::PhasePoint x = chain(4);
  for (auto _ : st) benchmark::DoNotOptimize(toda::hamiltonian_flow(x, 1, 5.0, 50));
}
BENCHMARK(BM_HamiltonianFlow)->Unit(benchmark::kMillisecond);

void BM_RelativeSpectrum(benchmark::State& st) {
  const double hbar = 1.0 / static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(toda::solve_relative_spectrum(hbar, 6));
}
BENCHMARK(BM_RelativeSpectrum)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_QEvaluation(benchmark::State& st) {
  const toda::QFunction q(toda::solve_relative_spectrum(0.5, 3)[2]);
  double g = -5.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(q.scaled({g, 0.3}));
    g = g > 5.0 ? -5.0 : g + 0.37;
  }
}
BENCHMARK(BM_QEvaluation)->Unit(benchmark::kMicrosecond);

void BM_MatrixElement(benchmark::State& st) {
  const auto s = toda::solve_relative_spectrum(0.5, 2);
  const toda::QFunction a(s[0]), b(s[1]);
  const auto F = toda::MultiPoly<std::complex<double>>::elementary(1, 1);
  for (auto _ : st) benchmark::DoNotOptimize(toda::matrix_element(a, b, F));
}
BENCHMARK(BM_MatrixElement)->Unit(benchmark::kMillisecond);

void BM_Characters(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(toda::character_resolution(n, 40));
}
BENCHMARK(BM_Characters)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
