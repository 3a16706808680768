#pragma once

#include <span>
#include <vector>

#include "crowdnav/agent.hpp"
#include "crowdnav/geometry.hpp"

namespace crowdnav {

struct Segment {
  Vec2 a;
  Vec2 b;
};

struct Attractor {
  Vec2 point;
  double strength = 0.0;  // 1/s^2, linear spring constant
};

/// Parameters of the social force pedestrian model.
struct SFParams {
  double tau = 0.5;       ///< relaxation time towards the desired velocity [s]
  double V0 = 2.1;        ///< repulsive potential strength [m^2/s^2]
  double sigma = 0.3;     ///< repulsive potential range [m]
  double lambda = 0.4;    ///< weight of interactions behind the agent, in [0, 1]
  double epsilon = 1e-6;  ///< floor on the radius-adjusted distance [m]
  double speed_cap_factor = 1.3;
  std::vector<Segment> boundary_segments;
  std::vector<Attractor> attractors;

  /// Throws crowdnav::Error if any invariant is violated.
  void validate() const;
};

/// Radius-adjusted displacement between two discs.
///
/// Surface distance |p_i - p_j| - r_i - r_j is floored at `epsilon` and
/// placed along the unit vector from j to i, so overlapping agents still get
/// a small, correctly oriented separation instead of a negative magnitude.
Vec2 adjusted_displacement(Vec2 p_i, double r_i, Vec2 p_j, double r_j, double epsilon);

/// Relaxation of the velocity towards v_pref along the goal direction.
Vec2 goal_force(const AgentState& state, const SFParams& params);

/// Anisotropic exponential repulsion of `self` away from `other`.
Vec2 pairwise_repulsion(const AgentState& self, const AgentState& other, const SFParams& params);

/// Repulsion from the nearest point of a wall segment.
Vec2 boundary_repulsion(const AgentState& self, const Segment& wall, const SFParams& params);

Vec2 attractor_force(const AgentState& self, const Attractor& attractor);

/// Sum of all force terms acting on `self`.
///
/// Neighbour terms are accumulated nearest-first so the result does not
/// depend on the order of `others`.
Vec2 total_force(const AgentState& self, std::span<const AgentState> others, const SFParams& params);

/// One Euler step of the force model, returned as a velocity command whose
/// speed never exceeds self.v_pref.
Action sf_velocity(const AgentState& self, std::span<const AgentState> others,
                   const SFParams& params, double dt);

}  // namespace crowdnav
