#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "crowdnav/agent.hpp"
#include "crowdnav/environments.hpp"
#include "crowdnav/orca.hpp"
#include "crowdnav/policy.hpp"
#include "crowdnav/random.hpp"
#include "crowdnav/social_force.hpp"

namespace crowdnav {

struct SimConfig {
  double dt = 0.25;
  double time_limit = 25.0;
  double discomfort_dist = 0.2;
  bool robot_visible = true;

  void validate() const;
};

/// 25 s for the simple environments, 50 s for the large and dense ones.
double default_time_limit(PresetName name);

/// Fraction of humans that stand still, and of the moving ones that use ORCA
/// (the rest use the social force model).
struct CrowdMixture {
  double orca_fraction = 1.0;
  double static_fraction = 0.0;

  void validate() const;
  bool operator==(const CrowdMixture&) const = default;
};

/// Parameters of the pedestrian models that drive the crowd.
struct CrowdModels {
  OrcaConfig orca;
  SFParams social_force;
};

struct HumanAgent {
  AgentState state;
  DynamicsPolicy policy = DynamicsPolicy::Orca;
  bool static_after_goal = false;

  /// Frozen humans never move again.
  bool frozen() const {
    return policy == DynamicsPolicy::Static || (static_after_goal && state.reached_goal);
  }
};

struct World {
  std::size_t step_index = 0;
  double t = 0.0;
  AgentState robot;
  std::vector<HumanAgent> humans;
};

World initial_world(const ScenarioSpec& spec);

/// The robot's view of a world snapshot.
Observation observe(const World& world);

enum class EventKind { Collision, Discomfort, HumanCollision };

/// Agent indices: 0 is the robot, k + 1 is human k.
struct Event {
  EventKind kind;
  std::size_t a;
  std::size_t b;
  double distance;  ///< closest surface distance during the step [m]
};

struct StepResult {
  World world;
  Action robot_action;
  std::vector<Event> events;

  bool robot_collided() const;
};

/// Independently marks each human Static, else ORCA, else social force.
ScenarioSpec assign_policies(ScenarioSpec spec, const CrowdMixture& mixture, Rng& rng);

/// Commands every agent from one frozen snapshot, then moves all of them.
/// Throws PolicyViolation if the robot policy exceeds its preferred speed.
StepResult step(const World& world, const Policy& robot_policy, const CrowdModels& models,
                const SimConfig& cfg, Rng& rng);

/// Velocity a crowd member commands from `world`, ignoring nothing but itself.
Action human_action(const World& world, std::size_t human, const CrowdModels& models,
                    const SimConfig& cfg);

struct Frame {
  double t = 0.0;
  std::vector<AgentState> agents;  ///< robot first, then humans in scenario order
};

Frame snapshot(const World& world);

struct EpisodeRecord {
  ScenarioSpec scenario;
  std::vector<Frame> frames;
  EpisodeOutcome outcome;
};

bool robot_reached_goal(const AgentState& robot);

/// Called after every step with the pre-step world and the step result.
using StepObserver = std::function<void(const World& before, const StepResult& result)>;

/// Steps until success, collision or the time limit.
EpisodeRecord run_episode(const ScenarioSpec& spec, const Policy& robot_policy,
                          const SimConfig& cfg, Rng& rng, const CrowdModels& models = {},
                          const StepObserver& observer = {});

}  // namespace crowdnav
