#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "crowdnav/learning/featurize.hpp"
#include "crowdnav/learning/value_net.hpp"
#include "crowdnav/learning/value_policy.hpp"

namespace {

using namespace crowdnav;

std::vector<double> random_features(Rng& rng) {
  std::vector<double> x(kFeatureSize);
  for (double& v : x) v = rng.uniform(-1, 1);
  return x;
}

void BM_ValueForward(benchmark::State& state) {
  Rng rng(4);
  const ValueNet net = ValueNet::random({kFeatureSize, 100, 100, 1}, rng);
  const std::vector<double> x = random_features(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_forward(net, x));
  }
}
BENCHMARK(BM_ValueForward);

void BM_ValueBackward(benchmark::State& state) {
  Rng rng(5);
  const ValueNet net = ValueNet::random({kFeatureSize, 100, 100, 1}, rng);
  const std::vector<double> x = random_features(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_backward(net, x));
  }
}
BENCHMARK(BM_ValueBackward);

void BM_GradientStep(benchmark::State& state) {
  Rng rng(6);
  ValueNet net = ValueNet::random({kFeatureSize, 100, 100, 1}, rng);
  std::vector<Experience> batch(100);
  for (Experience& e : batch) e = {random_features(rng), rng.uniform(-1, 1)};
  std::vector<const Experience*> ptrs;
  for (const Experience& e : batch) ptrs.push_back(&e);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient_step(net, ptrs, 1e-6));
  }
}
BENCHMARK(BM_GradientStep);

void BM_ValuePolicyAct(benchmark::State& state) {
  Rng rng(7);
  const auto net = std::make_shared<const ValueNet>(ValueNet::random({kFeatureSize, 100, 100, 1}, rng));
  const ValuePolicy policy(net, RewardParams{}, 0.25);
  Observation obs;
  obs.robot.goal = {0, 4};
  obs.robot.position = {0, -4};
  for (int k = 0; k < state.range(0); ++k) {
    obs.humans.push_back({{rng.uniform(-4, 4), rng.uniform(-4, 4)}, {rng.uniform(-1, 1), 0}, 0.3});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy.act(obs, rng));
  }
}
BENCHMARK(BM_ValuePolicyAct)->Arg(5)->Arg(10);

}  // namespace
