#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crowdnav/agent.hpp"
#include "crowdnav/geometry.hpp"

namespace crowdnav {

/// Directed line in velocity space; permitted velocities lie to its left.
struct HalfPlane {
  Vec2 point;
  Vec2 direction;  ///< unit

  /// Signed distance by which `v` violates the constraint (<= 0 if satisfied).
  double penetration(Vec2 v) const { return det(direction, point - v); }
};

struct OrcaConfig {
  double time_horizon = 5.0;  ///< agent-agent anticipation [s]
  double neighbor_dist = 10.0;
  std::size_t max_neighbors = 10;
  double reciprocity_share = 0.5;
  /// Added to both radii so that tangent solutions keep a gap [m].
  double safety_margin = 0.01;

  void validate() const;
};

/// ORCA constraint `self` receives from `other` for the next `dt`.
HalfPlane orca_halfplane(const AgentState& self, const AgentState& other, const OrcaConfig& cfg,
                         double dt);

struct Lp2Result {
  Vec2 velocity;
  /// Number of leading constraints satisfied; equals constraints.size() when
  /// the program is feasible, otherwise the index of the first failure.
  std::size_t satisfied_count = 0;
};

/// Point of {|v| <= max_speed} ∩ constraints closest to `preferred`.
/// Constraints are added incrementally in the given order.
Lp2Result solve_lp2(std::span<const HalfPlane> constraints, double max_speed, Vec2 preferred);

/// Least-penetration fallback: minimises the largest violation among
/// constraints from `start_index` onward within the speed disc.
Vec2 solve_lp3(std::span<const HalfPlane> constraints, double max_speed, std::size_t start_index,
               Vec2 current);

/// Velocity towards the goal, capped at v_pref and at what reaches the goal in one step.
Vec2 preferred_velocity(const AgentState& self, double dt);

/// Collision-avoiding velocity for `self` given its neighbours' states.
Action orca_velocity(const AgentState& self, std::span<const AgentState> neighbors,
                     const OrcaConfig& cfg, double dt);

/// Same as orca_velocity with an explicit preferred velocity.
Action orca_velocity(const AgentState& self, std::span<const AgentState> neighbors,
                     const OrcaConfig& cfg, double dt, Vec2 preferred);

}  // namespace crowdnav
