#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "crowdnav/orca.hpp"
#include "crowdnav/random.hpp"

namespace {

using namespace crowdnav;

std::vector<AgentState> ring(std::size_t n, Rng& rng) {
  std::vector<AgentState> out(n);
  for (AgentState& a : out) {
    a.position = {rng.uniform(-4, 4), rng.uniform(-4, 4)};
    a.velocity = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    a.radius = rng.uniform(0.3, 0.5);
    a.goal = {rng.uniform(-4, 4), rng.uniform(-4, 4)};
  }
  return out;
}

void BM_OrcaVelocity(benchmark::State& state) {
  Rng rng(1);
  const std::vector<AgentState> others = ring(static_cast<std::size_t>(state.range(0)), rng);
  AgentState self;
  self.goal = {5, 5};
  const OrcaConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(orca_velocity(self, others, cfg, 0.25));
  }
}
BENCHMARK(BM_OrcaVelocity)->Arg(5)->Arg(10)->Arg(20);

void BM_SolveLp2(benchmark::State& state) {
  Rng rng(2);
  std::vector<HalfPlane> lines;
  for (int k = 0; k < state.range(0); ++k) {
    const double a = rng.uniform(0, 6.283185307179586);
    const Vec2 n{std::cos(a), std::sin(a)};
    lines.push_back({n * rng.uniform(-0.8, 0.0), {n.y, -n.x}});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp2(lines, 1.0, {0.7, 0.3}));
  }
}
BENCHMARK(BM_SolveLp2)->Arg(4)->Arg(16);

}  // namespace
