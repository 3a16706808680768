#pragma once

#include <cstddef>
#include <vector>

#include "crowdnav/policy.hpp"

namespace crowdnav {

inline constexpr std::size_t kHumanSlots = 10;
inline constexpr std::size_t kRobotFeatures = 5;
inline constexpr std::size_t kHumanFeatures = 8;
inline constexpr std::size_t kFeatureSize = kRobotFeatures + kHumanSlots * kHumanFeatures;

/// Robot-centric feature vector, invariant to global rotation and translation.
///
/// Layout: [d_goal, v_pref, radius, vx, vy] followed by kHumanSlots blocks of
/// [px, py, vx, vy, r, r + r_robot, surface distance, present], nearest
/// human first. Positions and velocities are relative to the robot, in a
/// frame whose +x axis points at the goal. Unused slots are all zero.
std::vector<double> featurize(const Observation& obs);

}  // namespace crowdnav
