#include "crowdnav/social_force.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crowdnav/error.hpp"

namespace crowdnav {

void SFParams::validate() const {
  if (!(tau > 0.0)) throw Error("social_force.tau must be > 0");
  if (!(V0 >= 0.0)) throw Error("social_force.V0 must be >= 0");
  if (!(sigma > 0.0)) throw Error("social_force.sigma must be > 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("social_force.lambda must be in [0, 1]");
  if (!(epsilon > 0.0)) throw Error("social_force.epsilon must be > 0");
  if (!(speed_cap_factor >= 1.0)) throw Error("social_force.speed_cap_factor must be >= 1");
}

Vec2 adjusted_displacement(Vec2 p_i, double r_i, Vec2 p_j, double r_j, double epsilon) {
  const Vec2 u = unit_displacement(p_i, p_j);
  const double surface = distance(p_i, p_j) - r_i - r_j;
  return u * std::max(epsilon, surface);
}

Vec2 goal_force(const AgentState& state, const SFParams& params) {
  const Vec2 e_goal = unit_displacement(state.goal, state.position);
  return (e_goal * state.v_pref - state.velocity) / params.tau;
}

namespace {

// Direction the agent is heading: its velocity, or towards its goal while at
// rest. Zero when neither is defined.
Vec2 heading(const AgentState& s) {
  const double speed = s.velocity.norm();
  if (speed > kCoincidenceThreshold) {
    return s.velocity / speed;
  }
  const Vec2 to_goal = s.goal - s.position;
  const double d = to_goal.norm();
  if (!s.reached_goal && d > kCoincidenceThreshold) {
    return to_goal / d;
  }
  return {};
}

double exp_repulsion(double dist, const SFParams& p) {
  return p.V0 / p.sigma * std::exp(-dist / p.sigma);
}

}  // namespace

Vec2 pairwise_repulsion(const AgentState& self, const AgentState& other, const SFParams& params) {
  const Vec2 d = adjusted_displacement(self.position, self.radius, other.position, other.radius,
                                       params.epsilon);
  const double dist = d.norm();
  const Vec2 u = d / dist;
  // cos of the angle between the heading and the direction towards `other`.
  const double cos_phi = dot(heading(self), -u);
  const double w = params.lambda + (1.0 - params.lambda) * 0.5 * (1.0 + cos_phi);
  return u * (w * exp_repulsion(dist, params));
}

Vec2 boundary_repulsion(const AgentState& self, const Segment& wall, const SFParams& params) {
  const Vec2 q = closest_point_on_segment(self.position, wall.a, wall.b);
  const Vec2 away = self.position - q;
  const double n = away.norm();
  if (n < kCoincidenceThreshold) {
    return {};
  }
  const double dist = std::max(params.epsilon, n - self.radius);
  return away / n * exp_repulsion(dist, params);
}

Vec2 attractor_force(const AgentState& self, const Attractor& attractor) {
  return (attractor.point - self.position) * attractor.strength;
}

Vec2 total_force(const AgentState& self, std::span<const AgentState> others, const SFParams& params) {
  Vec2 force;
  const bool at_goal =
      self.reached_goal || distance(self.goal, self.position) < kCoincidenceThreshold;
  if (at_goal) {
    // No goal attraction left; relax to rest.
    force = -self.velocity / params.tau;
  } else {
    force = goal_force(self, params);
  }

  std::vector<std::size_t> order(others.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t k) {
    const Vec2 p = others[k].position;
    return std::tuple{distance(self.position, p), p.x, p.y};
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  for (std::size_t k : order) {
    const AgentState& other = others[k];
    if (distance(self.position, other.position) < kCoincidenceThreshold) {
      continue;  // no defined direction
    }
    force += pairwise_repulsion(self, other, params);
  }
  for (const Segment& wall : params.boundary_segments) {
    force += boundary_repulsion(self, wall, params);
  }
  for (const Attractor& a : params.attractors) {
    force += attractor_force(self, a);
  }
  return force;
}

Action sf_velocity(const AgentState& self, std::span<const AgentState> others,
                   const SFParams& params, double dt) {
  const Vec2 force = total_force(self, others, params);
  Vec2 v = self.velocity + force * dt;
  v = clamp_norm(v, params.speed_cap_factor * self.v_pref);
  return {clamp_norm(v, self.v_pref)};
}

}  // namespace crowdnav
