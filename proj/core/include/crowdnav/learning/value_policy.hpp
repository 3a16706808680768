#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "crowdnav/learning/reward.hpp"
#include "crowdnav/learning/value_net.hpp"
#include "crowdnav/policies.hpp"

namespace crowdnav {

/// Observation one step ahead: the robot executes `action`, every human keeps
/// its current velocity.
Observation propagate(const Observation& obs, const Action& action, double dt);

/// Immediate reward plus the discounted value of the predicted next state;
/// the reward alone if the predicted transition ends the episode.
double lookahead_value(const ValueNet& net, const Observation& obs, const Action& action, double dt,
                       const RewardParams& p);

/// lookahead_value for every action of `set`, in set order.
std::vector<double> lookahead_values(const ValueNet& net, const Observation& obs,
                                     const ActionSet& set, double dt, const RewardParams& p);

/// Index of the first maximum.
std::size_t argmax(std::span<const double> values);

/// Greedy one-step lookahead over the discrete action set, with optional
/// epsilon-greedy exploration.
class ValuePolicy final : public Policy {
 public:
  ValuePolicy(std::shared_ptr<const ValueNet> net, RewardParams reward, double dt,
              std::size_t n_directions = 16, double epsilon = 0.0);

  Action act(const Observation& obs, Rng& rng) const override;
  std::string_view id() const override { return "value"; }

  /// The greedy choice, never exploring.
  Action greedy(const Observation& obs) const;

  const ValueNet& net() const { return *net_; }
  double epsilon() const { return epsilon_; }
  std::size_t n_directions() const { return n_directions_; }

 private:
  std::shared_ptr<const ValueNet> net_;
  RewardParams reward_;
  double dt_;
  std::size_t n_directions_;
  double epsilon_;
};

}  // namespace crowdnav
