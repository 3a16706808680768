#include <benchmark/benchmark.h>

#include <vector>

#include "crowdnav/random.hpp"
#include "crowdnav/social_force.hpp"

namespace {

using namespace crowdnav;

void BM_SfVelocity(benchmark::State& state) {
  Rng rng(3);
  std::vector<AgentState> others(static_cast<std::size_t>(state.range(0)));
  for (AgentState& a : others) {
    a.position = {rng.uniform(-4, 4), rng.uniform(-4, 4)};
    a.velocity = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  }
  AgentState self;
  self.velocity = {0.5, 0.2};
  self.goal = {5, 5};
  const SFParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf_velocity(self, others, params, 0.25));
  }
}
BENCHMARK(BM_SfVelocity)->Arg(5)->Arg(10)->Arg(20);

}  // namespace
