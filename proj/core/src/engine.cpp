#include "crowdnav/engine.hpp"

#include <cmath>

#include "crowdnav/error.hpp"

namespace crowdnav {

namespace {

constexpr double kSpeedTolerance = 1e-9;

// States of every agent except `self_index`, as seen from a crowd member.
std::vector<AgentState> neighbours_of(const World& world, std::size_t human, bool robot_visible) {
  std::vector<AgentState> out;
  out.reserve(world.humans.size() + 1);
  if (robot_visible) {
    out.push_back(world.robot);
  }
  for (std::size_t k = 0; k < world.humans.size(); ++k) {
    if (k != human) {
      out.push_back(world.humans[k].state);
    }
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw Error("sim.dt must be > 0");
  if (!(time_limit > dt)) throw Error("sim.time_limit must exceed sim.dt");
  if (!(discomfort_dist > 0.0)) throw Error("sim.discomfort_dist must be > 0");
}

double default_time_limit(PresetName name) {
  switch (name) {
    case PresetName::SimpleCircle:
    case PresetName::SimpleSquare:
      return 25.0;
    default:
      return 50.0;
  }
}

void CrowdMixture::validate() const {
  if (!(orca_fraction >= 0.0 && orca_fraction <= 1.0)) {
    throw Error("mixture.orca_fraction must be in [0, 1]");
  }
  if (!(static_fraction >= 0.0 && static_fraction <= 1.0)) {
    throw Error("mixture.static_fraction must be in [0, 1]");
  }
}

World initial_world(const ScenarioSpec& spec) {
  World w;
  w.robot.position = spec.robot_start;
  w.robot.goal = spec.robot_goal;
  w.robot.radius = spec.robot.radius;
  w.robot.v_pref = spec.robot.v_pref;
  w.humans.reserve(spec.humans.size());
  for (const HumanSpec& h : spec.humans) {
    HumanAgent agent;
    agent.state.position = h.start;
    agent.state.goal = h.goal;
    agent.state.radius = h.radius;
    agent.state.v_pref = h.v_pref;
    agent.policy = h.policy;
    agent.static_after_goal = h.static_after_goal;
    w.humans.push_back(agent);
  }
  return w;
}

Observation observe(const World& world) {
  Observation obs;
  obs.robot = world.robot;
  obs.t = world.t;
  obs.humans.reserve(world.humans.size());
  for (const HumanAgent& h : world.humans) {
    obs.humans.push_back({h.state.position, h.state.velocity, h.state.radius});
  }
  return obs;
}

bool StepResult::robot_collided() const {
  for (const Event& e : events) {
    if (e.kind == EventKind::Collision) return true;
  }
  return false;
}

ScenarioSpec assign_policies(ScenarioSpec spec, const CrowdMixture& mixture, Rng& rng) {
  mixture.validate();
  for (HumanSpec& h : spec.humans) {
    if (rng.bernoulli(mixture.static_fraction)) {
      h.policy = DynamicsPolicy::Static;
    } else if (rng.bernoulli(mixture.orca_fraction)) {
      h.policy = DynamicsPolicy::Orca;
    } else {
      h.policy = DynamicsPolicy::SocialForce;
    }
  }
  return spec;
}

Action human_action(const World& world, std::size_t human, const CrowdModels& models,
                    const SimConfig& cfg) {
  const HumanAgent& h = world.humans[human];
  if (h.frozen()) {
    return {};
  }
  const std::vector<AgentState> others = neighbours_of(world, human, cfg.robot_visible);
  switch (h.policy) {
    case DynamicsPolicy::Orca:
      return orca_velocity(h.state, others, models.orca, cfg.dt);
    case DynamicsPolicy::SocialForce:
      return sf_velocity(h.state, others, models.social_force, cfg.dt);
    case DynamicsPolicy::Static:
      break;
  }
  return {};
}

StepResult step(const World& world, const Policy& robot_policy, const CrowdModels& models,
                const SimConfig& cfg, Rng& rng) {
  const std::size_t n = world.humans.size();
  std::vector<Action> actions(n);
  for (std::size_t k = 0; k < n; ++k) {
    actions[k] = human_action(world, k, models, cfg);
  }
  const Action robot_action = robot_policy.act(observe(world), rng);
  if (!robot_action.velocity.finite() ||
      robot_action.velocity.norm() > world.robot.v_pref + kSpeedTolerance) {
    throw PolicyViolation("robot policy '" + std::string(robot_policy.id()) +
                          "' exceeded its preferred speed");
  }

  StepResult out;
  out.robot_action = robot_action;
  World& next = out.world;
  next = world;
  next.step_index = world.step_index + 1;
  next.t = static_cast<double>(next.step_index) * cfg.dt;

  next.robot.velocity = robot_action.velocity;
  next.robot.position = world.robot.position + robot_action.velocity * cfg.dt;
  next.robot.reached_goal = robot_reached_goal(next.robot);

  for (std::size_t k = 0; k < n; ++k) {
    AgentState& s = next.humans[k].state;
    s.velocity = actions[k].velocity;
    s.position = world.humans[k].state.position + s.velocity * cfg.dt;
    if (distance(s.position, s.goal) < s.radius) {
      s.reached_goal = true;
    }
    if (next.humans[k].frozen()) {
      s.velocity = {};
    }
  }

  const AgentState& r0 = world.robot;
  const AgentState& r1 = next.robot;
  for (std::size_t k = 0; k < n; ++k) {
    const AgentState& h0 = world.humans[k].state;
    const AgentState& h1 = next.humans[k].state;
    const double swept = min_segment_distance(r0.position, r1.position, h0.position, h1.position) -
                         r0.radius - h0.radius;
    if (swept < 0.0) {
      out.events.push_back({EventKind::Collision, 0, k + 1, swept});
    }
    const double surface = distance(r1.position, h1.position) - r1.radius - h1.radius;
    if (surface < cfg.discomfort_dist) {
      out.events.push_back({EventKind::Discomfort, 0, k + 1, surface});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const AgentState& a0 = world.humans[a].state;
      const AgentState& b0 = world.humans[b].state;
      const double swept = min_segment_distance(a0.position, next.humans[a].state.position,
                                                b0.position, next.humans[b].state.position) -
                           a0.radius - b0.radius;
      if (swept < 0.0) {
        out.events.push_back({EventKind::HumanCollision, a + 1, b + 1, swept});
      }
    }
  }
  return out;
}

Frame snapshot(const World& world) {
  Frame f;
  f.t = world.t;
  f.agents.reserve(world.humans.size() + 1);
  f.agents.push_back(world.robot);
  for (const HumanAgent& h : world.humans) {
    f.agents.push_back(h.state);
  }
  return f;
}

bool robot_reached_goal(const AgentState& robot) {
  return distance(robot.position, robot.goal) < robot.radius;
}

EpisodeRecord run_episode(const ScenarioSpec& spec, const Policy& robot_policy,
                          const SimConfig& cfg, Rng& rng, const CrowdModels& models,
                          const StepObserver& observer) {
  cfg.validate();
  EpisodeRecord rec;
  rec.scenario = spec;
  World world = initial_world(spec);
  rec.frames.push_back(snapshot(world));

  // Step count at which the time limit is reached, robust to dt round-off.
  const auto max_steps = static_cast<std::size_t>(std::ceil(cfg.time_limit / cfg.dt - 1e-9));

  while (true) {
    StepResult res = step(world, robot_policy, models, cfg, rng);
    if (observer) {
      observer(world, res);
    }
    world = std::move(res.world);
    rec.frames.push_back(snapshot(world));

    if (res.robot_collided()) {
      rec.outcome = {OutcomeKind::Collision, world.t};
      break;
    }
    if (world.robot.reached_goal) {
      rec.outcome = {OutcomeKind::Success, world.t};
      break;
    }
    if (world.step_index >= max_steps) {
      rec.outcome = {OutcomeKind::Timeout, world.t};
      break;
    }
  }
  return rec;
}

}  // namespace crowdnav
