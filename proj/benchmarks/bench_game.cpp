#include <benchmark/benchmark.h>

#include "clockgame/game.hpp"

namespace {

using namespace clockgame;

GameConfig worst_case_config(int time_bins, int parties) {
  GameConfig config;
  config.time_bins = time_bins;
  config.levels = time_bins + 1;
  config.parties = parties;
  config.time_bin = time_bins;
  config.phases.assign(parties - 1, 0.7);
  return config;
}

void BM_ExactAnalysisTwoParty(benchmark::State& state) {
  const int time_bins = static_cast<int>(state.range(0));
  GameConfig config = worst_case_config(time_bins, 2);
  AncillaSpec ancilla = AncillaSpec::maximal(config.levels, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_exact(config, ancilla).win_probability);
  }
}
BENCHMARK(BM_ExactAnalysisTwoParty)->Arg(2)->Arg(4)->Arg(8);

void BM_ExactAnalysisFourParty(benchmark::State& state) {
  const int time_bins = static_cast<int>(state.range(0));
  GameConfig config = worst_case_config(time_bins, 4);
  AncillaSpec ancilla = AncillaSpec::maximal(config.levels, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_exact(config, ancilla).win_probability);
  }
}
BENCHMARK(BM_ExactAnalysisFourParty)->Arg(4)->Arg(6)->Arg(8);

void BM_PlayRound(benchmark::State& state) {
  GameConfig config = worst_case_config(4, 2);
  AncillaSpec ancilla = AncillaSpec::maximal(config.levels, 2);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    RoundRecord record = play_round(config, ancilla, derive_seed(7, trial++));
    benchmark::DoNotOptimize(record.decoded_bin);
  }
}
BENCHMARK(BM_PlayRound);

}  // namespace
