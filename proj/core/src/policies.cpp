#include "crowdnav/policies.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "crowdnav/error.hpp"

namespace crowdnav {

double ActionSet::direction(std::size_t k) const {
  const Vec2 v = actions[k].velocity;
  if (v.norm_sq() == 0.0) return 0.0;
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

ActionSet build_action_set(double v_pref, std::size_t n_directions) {
  if (n_directions < 4) {
    throw Error("action set needs at least 4 directions");
  }
  ActionSet set;
  set.n_speeds = kSpeedIncrements;
  set.n_directions = n_directions;
  set.actions.reserve(1 + kSpeedIncrements * n_directions);
  set.actions.push_back({});
  for (std::size_t j = 0; j < n_directions; ++j) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_directions);
    const Vec2 heading{std::cos(angle), std::sin(angle)};
    for (std::size_t k = 1; k <= kSpeedIncrements; ++k) {
      const double speed = static_cast<double>(k) / static_cast<double>(kSpeedIncrements) * v_pref;
      set.actions.push_back({heading * speed});
    }
  }
  return set;
}

std::vector<AgentState> observed_agents(const Observation& obs) {
  std::vector<AgentState> out;
  out.reserve(obs.humans.size());
  for (const ObservableState& h : obs.humans) {
    AgentState s;
    s.position = h.position;
    s.velocity = h.velocity;
    s.radius = h.radius;
    s.goal = h.position;  // unknown to the robot
    out.push_back(s);
  }
  return out;
}

Action StaticPolicy::act(const Observation&, Rng&) const { return {}; }

Action OrcaPolicy::act(const Observation& obs, Rng&) const {
  return orca_velocity(obs.robot, observed_agents(obs), cfg_, dt_);
}

Action SocialForcePolicy::act(const Observation& obs, Rng&) const {
  return sf_velocity(obs.robot, observed_agents(obs), params_, dt_);
}

Action straight_and_stop(const Observation& obs, double stop_radius, double dt) {
  for (const ObservableState& h : obs.humans) {
    const double surface = distance(obs.robot.position, h.position) - obs.robot.radius - h.radius;
    if (surface < stop_radius) {
      return {};
    }
  }
  return {preferred_velocity(obs.robot, dt)};
}

Action StraightStopPolicy::act(const Observation& obs, Rng&) const {
  return straight_and_stop(obs, stop_radius_, dt_);
}

Action RandomPolicy::act(const Observation& obs, Rng& rng) const {
  const ActionSet set = build_action_set(obs.robot.v_pref, n_directions_);
  return set.actions[rng.index(set.size())];
}

}  // namespace crowdnav
