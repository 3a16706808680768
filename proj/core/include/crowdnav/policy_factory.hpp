#pragma once

#include <memory>
#include <string_view>

#include "crowdnav/learning/reward.hpp"
#include "crowdnav/learning/value_net.hpp"
#include "crowdnav/orca.hpp"
#include "crowdnav/policy.hpp"
#include "crowdnav/social_force.hpp"

namespace crowdnav {

struct PolicyOptions {
  double dt = 0.25;
  OrcaConfig orca;
  SFParams social_force;
  double stop_radius = 0.7;
  std::size_t n_directions = 16;
  RewardParams reward;
  std::shared_ptr<const ValueNet> net;  ///< required by "value"
};

/// "orca" | "social_force" | "straight_stop" | "static" | "value" | "random".
/// Throws crowdnav::Error for an unknown id or a value policy without a net.
std::unique_ptr<Policy> make_policy(std::string_view id, const PolicyOptions& options);

}  // namespace crowdnav
