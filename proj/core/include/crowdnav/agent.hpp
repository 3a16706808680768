#pragma once

#include <string_view>

#include "crowdnav/geometry.hpp"

namespace crowdnav {

struct AgentState {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  double v_pref = 1.0;
  Vec2 goal;
  bool reached_goal = false;
};

/// Holonomic velocity command applied for the next timestep.
struct Action {
  Vec2 velocity;

  bool operator==(const Action&) const = default;
};

enum class OutcomeKind { Success, Collision, Timeout };

struct EpisodeOutcome {
  OutcomeKind kind = OutcomeKind::Timeout;
  double time_elapsed = 0.0;
};

std::string_view to_string(OutcomeKind kind);
OutcomeKind outcome_from_string(std::string_view name);

}  // namespace crowdnav
