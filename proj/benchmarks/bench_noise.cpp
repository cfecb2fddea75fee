#include <benchmark/benchmark.h>

#include "clockgame/noise.hpp"

namespace {

using namespace clockgame;

void BM_DampedAncilla(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  NoiseParams params = NoiseParams::uniform(levels, 1e-3, 1.0, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(damped_ancilla(levels, params).rho.entries().data());
  }
}
BENCHMARK(BM_DampedAncilla)->Arg(2)->Arg(4)->Arg(8);

void BM_NoisyWinProbability(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  NoiseParams params = NoiseParams::uniform(levels, 1e-3, 1.0, 0.5);
  DensityMatrix rho = combined_noisy_ancilla(levels, params).rho;
  for (auto _ : state) {
    benchmark::DoNotOptimize(noisy_win_probability(levels, 1, rho, ReplyMode::Photon));
  }
}
BENCHMARK(BM_NoisyWinProbability)->Arg(2)->Arg(4)->Arg(8);

void BM_LindbladIntegrator100Steps(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  NoiseParams params = NoiseParams::uniform(levels, 1e-3, 1.0, 0.5);
  for (auto _ : state) {
    DensityMatrix rho = lindblad_integrator_oracle(levels, params, 1e-3, 100);
    benchmark::DoNotOptimize(rho.entries().data());
  }
}
BENCHMARK(BM_LindbladIntegrator100Steps)->Arg(2)->Arg(4);

}  // namespace
