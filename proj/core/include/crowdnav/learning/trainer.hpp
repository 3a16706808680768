#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "crowdnav/engine.hpp"
#include "crowdnav/learning/imitation.hpp"
#include "crowdnav/learning/reward.hpp"
#include "crowdnav/learning/schedule.hpp"
#include "crowdnav/learning/value_net.hpp"

namespace crowdnav {

struct TrainConfig {
  RewardParams reward;
  SimConfig sim;
  /// Per-environment default when unset.
  std::optional<double> time_limit;
  CrowdModels models;
  RobotSpec robot;
  std::vector<std::size_t> hidden_widths = {100, 100};
  double learning_rate = 1e-3;
  std::size_t batch_size = 100;
  std::size_t replay_capacity = 100'000;
  std::size_t n_directions = 16;
  ImitationConfig imitation;

  void validate() const;
};

struct TrainingLogRow {
  std::size_t episode = 0;
  std::size_t phase = 0;
  OutcomeKind outcome = OutcomeKind::Timeout;
  double ret = 0.0;   ///< discounted return from the first step
  double loss = 0.0;  ///< mean mini-batch loss over the episode's updates
  double epsilon = 0.0;
};

struct TrainResult {
  ValueNet net;
  std::vector<TrainingLogRow> log;
  std::optional<ImitationResult> imitation;
};

/// Network shape {kFeatureSize, hidden..., 1}.
std::vector<std::size_t> value_net_widths(const TrainConfig& cfg);

/// ORCA-robot demonstrations in the schedule's first phase.
std::vector<EpisodeRecord> collect_demonstrations(const TrainingSchedule& schedule,
                                                  std::uint64_t seed, const TrainConfig& cfg);

/// Imitation warm start followed by epsilon-greedy temporal-difference
/// learning over the schedule. Bit-identical for a fixed seed.
TrainResult train(const TrainingSchedule& schedule, std::uint64_t seed, const TrainConfig& cfg);

}  // namespace crowdnav
