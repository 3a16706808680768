#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crowdnav/engine.hpp"
#include "crowdnav/learning/reward.hpp"
#include "crowdnav/learning/value_net.hpp"

namespace crowdnav {

struct ImitationConfig {
  std::size_t sweeps = 50;
  std::size_t batch_size = 100;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
};

/// The robot's view of a recorded frame (agents[0] is the robot).
Observation observation_from_frame(const Frame& frame);

/// One sample per non-final frame, targeting the discounted return-to-go
/// of the rewards the demonstration actually collected.
std::vector<Experience> demo_experiences(const EpisodeRecord& demo, const RewardParams& p);

struct ImitationResult {
  ValueNet net;
  double initial_loss = 0.0;
  std::vector<double> sweep_losses;  ///< full-set MSE after each sweep
  std::size_t sample_count = 0;
};

/// Supervised fit of `net` to expert return-to-go targets by shuffled
/// mini-batch gradient descent. Throws EmptyInput when there are no samples.
ImitationResult il_warmstart(ValueNet net, std::span<const EpisodeRecord> demos,
                             const RewardParams& p, const ImitationConfig& cfg = {});

}  // namespace crowdnav
