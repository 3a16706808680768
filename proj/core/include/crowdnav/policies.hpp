#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "crowdnav/orca.hpp"
#include "crowdnav/policy.hpp"
#include "crowdnav/social_force.hpp"

namespace crowdnav {

/// Discrete velocity commands available to the robot.
struct ActionSet {
  std::vector<Action> actions;
  std::size_t n_speeds = 0;
  std::size_t n_directions = 0;

  std::size_t size() const { return actions.size(); }
  /// Speed and heading of actions[k]; the null action reports (0, 0).
  double speed(std::size_t k) const { return actions[k].velocity.norm(); }
  double direction(std::size_t k) const;
};

inline constexpr std::size_t kSpeedIncrements = 5;

/// Null action followed by five speeds k/5 * v_pref for each of
/// `n_directions` headings 2*pi*j/n_directions, direction-major.
ActionSet build_action_set(double v_pref, std::size_t n_directions = 16);

/// Human observations as agent states, for reusing the crowd models.
std::vector<AgentState> observed_agents(const Observation& obs);

class StaticPolicy final : public Policy {
 public:
  Action act(const Observation& obs, Rng& rng) const override;
  std::string_view id() const override { return "static"; }
};

class OrcaPolicy final : public Policy {
 public:
  OrcaPolicy(OrcaConfig cfg, double dt) : cfg_(cfg), dt_(dt) {}
  Action act(const Observation& obs, Rng& rng) const override;
  std::string_view id() const override { return "orca"; }

 private:
  OrcaConfig cfg_;
  double dt_;
};

class SocialForcePolicy final : public Policy {
 public:
  SocialForcePolicy(SFParams params, double dt) : params_(std::move(params)), dt_(dt) {}
  Action act(const Observation& obs, Rng& rng) const override;
  std::string_view id() const override { return "social_force"; }

 private:
  SFParams params_;
  double dt_;
};

/// Full speed towards the goal unless some human is within `stop_radius`
/// (surface distance), in which case it stands still.
Action straight_and_stop(const Observation& obs, double stop_radius, double dt);

class StraightStopPolicy final : public Policy {
 public:
  explicit StraightStopPolicy(double stop_radius = 0.7, double dt = 0.25)
      : stop_radius_(stop_radius), dt_(dt) {}
  Action act(const Observation& obs, Rng& rng) const override;
  std::string_view id() const override { return "straight_stop"; }

 private:
  double stop_radius_;
  double dt_;
};

/// Uniformly random element of the action set.
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::size_t n_directions = 16) : n_directions_(n_directions) {}
  Action act(const Observation& obs, Rng& rng) const override;
  std::string_view id() const override { return "random"; }

 private:
  std::size_t n_directions_;
};

}  // namespace crowdnav
