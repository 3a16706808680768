#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crowdnav/geometry.hpp"
#include "crowdnav/random.hpp"

namespace crowdnav {

enum class CrossingType { Circle, Square };

enum class PresetName { SimpleCircle, SimpleSquare, LargeCircle, LargeSquare, DenseCircle, DenseSquare };

/// One crossing environment: crowd size and spatial extent.
struct EnvPreset {
  PresetName name = PresetName::SimpleCircle;
  CrossingType crossing = CrossingType::Circle;
  int n = 5;
  double extent = 4.0;  ///< circle radius or square width [m]
};

/// The four evaluation environments, in report order.
inline constexpr std::array<PresetName, 4> kDiverse4 = {
    PresetName::LargeCircle, PresetName::LargeSquare, PresetName::DenseCircle,
    PresetName::DenseSquare};

std::string_view to_string(PresetName name);

/// Accepts "SimpleCircle" or "simple-circle" spellings. Throws UnknownPreset.
PresetName preset_name_from_string(std::string_view name);

EnvPreset preset(PresetName name);
EnvPreset preset(std::string_view name);

/// Mean crowd density in humans per square metre.
double density(const EnvPreset& p);

enum class DynamicsPolicy { Orca, SocialForce, Static };

std::string_view to_string(DynamicsPolicy policy);
DynamicsPolicy dynamics_policy_from_string(std::string_view name);

struct HumanSpec {
  Vec2 start;
  Vec2 goal;
  double radius = 0.3;
  double v_pref = 1.0;
  DynamicsPolicy policy = DynamicsPolicy::Orca;
  bool static_after_goal = false;
};

struct RobotSpec {
  double radius = 0.3;
  double v_pref = 1.0;
};

/// A fully instantiated episode.
struct ScenarioSpec {
  EnvPreset preset;
  Vec2 robot_start;
  Vec2 robot_goal;
  RobotSpec robot;
  std::vector<HumanSpec> humans;
  std::uint64_t seed = 0;
};

struct HumanAttributes {
  double radius;
  double v_pref;
};

inline constexpr double kRadiusMin = 0.3;
inline constexpr double kRadiusMax = 0.5;
inline constexpr double kSpeedMin = 0.5;
inline constexpr double kSpeedMax = 1.5;

/// Radius ~ U(0.3, 0.5) m and preferred speed ~ U(0.5, 1.5) m/s, independent.
HumanAttributes sample_attributes(Rng& rng);

struct PlacementConfig {
  double perturbation = 0.5;  ///< half-width of the per-axis uniform jitter [m]
  double clearance = 0.2;     ///< extra gap required between discs [m]
  int max_attempts = 10'000;
};

ScenarioSpec gen_circle_crossing(const EnvPreset& p, Rng& rng, const RobotSpec& robot = {},
                                 const PlacementConfig& placement = {});
ScenarioSpec gen_square_crossing(const EnvPreset& p, Rng& rng, const RobotSpec& robot = {},
                                 const PlacementConfig& placement = {});

/// Dispatches on the preset's crossing type. Records `seed` in the spec.
ScenarioSpec generate_scenario(const EnvPreset& p, std::uint64_t seed, const RobotSpec& robot = {},
                               const PlacementConfig& placement = {});

/// Same, drawing from an existing stream.
ScenarioSpec generate_scenario(const EnvPreset& p, Rng& rng, const RobotSpec& robot = {},
                               const PlacementConfig& placement = {});

}  // namespace crowdnav
