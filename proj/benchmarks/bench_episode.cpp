#include <benchmark/benchmark.h>

#include "crowdnav/metrics.hpp"
#include "crowdnav/policies.hpp"

namespace {

using namespace crowdnav;

void BM_Episode(benchmark::State& state) {
  const auto env = static_cast<PresetName>(state.range(0));
  EvalSettings settings;
  settings.mixture = {0.5, 0.0};
  const OrcaPolicy robot({}, 0.25);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_seeded_episode(env, seed++, robot, settings));
  }
  state.SetLabel(std::string(to_string(env)));
}
BENCHMARK(BM_Episode)
    ->Arg(static_cast<int>(PresetName::SimpleCircle))
    ->Arg(static_cast<int>(PresetName::DenseSquare))
    ->Unit(benchmark::kMillisecond);

}  // namespace
