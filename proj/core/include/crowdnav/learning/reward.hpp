#pragma once

#include <limits>

#include "crowdnav/agent.hpp"
#include "crowdnav/policy.hpp"

namespace crowdnav {

struct RewardParams {
  double success_reward = 1.0;
  double collision_penalty = -0.25;
  double discomfort_penalty_scale = 0.5;  ///< per metre of intrusion
  double discomfort_dist = 0.2;
  double gamma = 0.9;

  void validate() const;
};

/// What happened between two consecutive observations.
struct TransitionAssessment {
  bool success = false;
  bool collision = false;
  /// Closest robot-human surface distance while both moved linearly.
  double min_surface_distance = std::numeric_limits<double>::infinity();

  bool terminal() const { return success || collision; }
};

/// Humans are matched by index; throws ShapeMismatch if the counts differ.
TransitionAssessment assess_transition(const Observation& prev, const Observation& next);

/// Collision penalty, else success reward, else a penalty proportional to
/// the intrusion into the discomfort band scaled by dt, else zero.
double reward(const Observation& prev, const Action& action, const Observation& next, double dt,
              const RewardParams& p);

double reward(const TransitionAssessment& t, double dt, const RewardParams& p);

/// Per-step discount gamma^(dt * v_pref).
double step_discount(const RewardParams& p, double dt, double v_pref);

}  // namespace crowdnav
