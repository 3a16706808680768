#include "crowdnav/learning/reward.hpp"

#include <algorithm>
#include <cmath>

#include "crowdnav/engine.hpp"
#include "crowdnav/error.hpp"

namespace crowdnav {

void RewardParams::validate() const {
  if (!(success_reward > 0.0)) throw Error("reward.success_reward must be > 0");
  if (!(collision_penalty < 0.0)) throw Error("reward.collision_penalty must be < 0");
  if (!(discomfort_penalty_scale >= 0.0)) throw Error("reward.discomfort_penalty_scale must be >= 0");
  if (!(discomfort_dist > 0.0)) throw Error("reward.discomfort_dist must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error("reward.gamma must be in (0, 1)");
}

TransitionAssessment assess_transition(const Observation& prev, const Observation& next) {
  if (prev.humans.size() != next.humans.size()) {
    throw ShapeMismatch("observations disagree on the number of humans");
  }
  TransitionAssessment out;
  for (std::size_t k = 0; k < prev.humans.size(); ++k) {
    const double d = min_segment_distance(prev.robot.position, next.robot.position,
                                          prev.humans[k].position, next.humans[k].position) -
                     prev.robot.radius - prev.humans[k].radius;
    out.min_surface_distance = std::min(out.min_surface_distance, d);
  }
  out.collision = out.min_surface_distance < 0.0;
  out.success = robot_reached_goal(next.robot);
  return out;
}

double reward(const TransitionAssessment& t, double dt, const RewardParams& p) {
  if (t.collision) return p.collision_penalty;
  if (t.success) return p.success_reward;
  if (t.min_surface_distance < p.discomfort_dist) {
    return p.discomfort_penalty_scale * (t.min_surface_distance - p.discomfort_dist) * dt;
  }
  return 0.0;
}

double reward(const Observation& prev, const Action&, const Observation& next, double dt,
              const RewardParams& p) {
  return reward(assess_transition(prev, next), dt, p);
}

double step_discount(const RewardParams& p, double dt, double v_pref) {
  return std::pow(p.gamma, dt * v_pref);
}

}  // namespace crowdnav
