#include <benchmark/benchmark.h>

#include "clockgame/phase_extraction.hpp"
#include "clockgame/rng.hpp"

namespace {

using namespace clockgame;

void BM_JointState(benchmark::State& state) {
  ExtractionConfig config;
  config.pair_count = static_cast<int>(state.range(0));
  config.unknown_phase = 0.9;
  for (auto _ : state) {
    SectorState joint = joint_state(config);
    benchmark::DoNotOptimize(joint.amps().data());
  }
}
BENCHMARK(BM_JointState)->Arg(8)->Arg(12)->Arg(16);

void BM_AverageFisher(benchmark::State& state) {
  const int pairs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(average_fisher(pairs, 1024));
  }
}
BENCHMARK(BM_AverageFisher)->Arg(10)->Arg(40)->Arg(200);

void BM_MleEstimate(benchmark::State& state) {
  ExtractionConfig config;
  config.pair_count = 8;
  config.unknown_phase = 1.0;
  SplitMix64 rng(4);
  std::vector<MleSample> samples = draw_protocol_samples(config, 10000, rng);
  for (auto _ : state) {
    MleResult result = mle_estimate(8, samples, 0.0, 1.2);
    benchmark::DoNotOptimize(result.phi_hat);
  }
}
BENCHMARK(BM_MleEstimate);

}  // namespace
