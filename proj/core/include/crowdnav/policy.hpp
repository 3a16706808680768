#pragma once

#include <string_view>
#include <vector>

#include "crowdnav/agent.hpp"
#include "crowdnav/random.hpp"

namespace crowdnav {

/// What the robot may see of a human: no goal, no preferred speed.
struct ObservableState {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
};

struct Observation {
  AgentState robot;
  std::vector<ObservableState> humans;
  double t = 0.0;
};

/// Robot navigation policy. Implementations are immutable after
/// construction; act() is pure apart from draws on `rng`.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Returned speed never exceeds obs.robot.v_pref.
  virtual Action act(const Observation& obs, Rng& rng) const = 0;

  virtual std::string_view id() const = 0;
};

}  // namespace crowdnav
