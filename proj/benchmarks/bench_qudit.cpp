#include <benchmark/benchmark.h>

#include "clockgame/qudit.hpp"

namespace {

using namespace clockgame;

void BM_ApplyFourierOneLeg(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  StateVector ghz = ghz_state(levels, 4);
  UnitaryMatrix fourier = fourier_matrix(levels);
  for (auto _ : state) {
    StateVector out = apply_unitary(ghz, fourier, {2});
    benchmark::DoNotOptimize(out.amps().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyFourierOneLeg)->Arg(4)->Arg(6)->Arg(9)->Complexity();

void BM_PartialTraceGhz(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  DensityMatrix rho = density_from_state(ghz_state(levels, 2));
  for (auto _ : state) {
    DensityMatrix reduced = partial_trace(rho, {0});
    benchmark::DoNotOptimize(reduced.entries().data());
  }
}
BENCHMARK(BM_PartialTraceGhz)->Arg(4)->Arg(8)->Arg(16);

void BM_VnEntropy(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  DensityMatrix marginal = partial_trace(density_from_state(ghz_state(levels, 2)), {0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(vn_entropy(marginal));
  }
}
BENCHMARK(BM_VnEntropy)->Arg(8)->Arg(32)->Arg(128);

}  // namespace
