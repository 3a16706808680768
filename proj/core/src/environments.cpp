#include "crowdnav/environments.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "crowdnav/error.hpp"

namespace crowdnav {

namespace {

struct PresetRow {
  PresetName name;
  std::string_view id;
  std::string_view kebab;
  CrossingType crossing;
  int n;
  double extent;
};

constexpr std::array<PresetRow, 6> kPresets = {{
    {PresetName::SimpleCircle, "SimpleCircle", "simple-circle", CrossingType::Circle, 5, 4.0},
    {PresetName::SimpleSquare, "SimpleSquare", "simple-square", CrossingType::Square, 10, 10.0},
    {PresetName::LargeCircle, "LargeCircle", "large-circle", CrossingType::Circle, 12, 6.0},
    {PresetName::LargeSquare, "LargeSquare", "large-square", CrossingType::Square, 20, 14.0},
    {PresetName::DenseCircle, "DenseCircle", "dense-circle", CrossingType::Circle, 10, 4.0},
    {PresetName::DenseSquare, "DenseSquare", "dense-square", CrossingType::Square, 20, 10.0},
}};

const PresetRow& row(PresetName name) {
  for (const auto& r : kPresets) {
    if (r.name == name) return r;
  }
  throw UnknownPreset("unknown environment preset");
}

struct Disc {
  Vec2 centre;
  double radius;
};

bool clear_of(const std::vector<Disc>& placed, Vec2 p, double r, double clearance) {
  for (const Disc& d : placed) {
    if (distance(d.centre, p) <= d.radius + r + clearance) {
      return false;
    }
  }
  return true;
}

Vec2 jitter(Rng& rng, double half_width) {
  const double dx = rng.uniform(-half_width, half_width);
  const double dy = rng.uniform(-half_width, half_width);
  return {dx, dy};
}

ScenarioSpec base_spec(const EnvPreset& p, const RobotSpec& robot, Vec2 start, Vec2 goal) {
  ScenarioSpec spec;
  spec.preset = p;
  spec.robot = robot;
  spec.robot_start = start;
  spec.robot_goal = goal;
  spec.humans.reserve(static_cast<std::size_t>(p.n));
  return spec;
}

[[noreturn]] void placement_failed(const EnvPreset& p, std::size_t human) {
  throw PlacementFailure("could not place human " + std::to_string(human) + " in " +
                         std::string(to_string(p.name)));
}

}  // namespace

std::string_view to_string(PresetName name) { return row(name).id; }

PresetName preset_name_from_string(std::string_view name) {
  for (const auto& r : kPresets) {
    if (name == r.id || name == r.kebab) return r.name;
  }
  throw UnknownPreset("unknown environment preset '" + std::string(name) + "'");
}

EnvPreset preset(PresetName name) {
  const PresetRow& r = row(name);
  return {r.name, r.crossing, r.n, r.extent};
}

EnvPreset preset(std::string_view name) { return preset(preset_name_from_string(name)); }

double density(const EnvPreset& p) {
  const double n = static_cast<double>(p.n);
  if (p.crossing == CrossingType::Circle) {
    return n / (std::numbers::pi * p.extent * p.extent);
  }
  return n / (p.extent * p.extent);
}

std::string_view to_string(DynamicsPolicy policy) {
  switch (policy) {
    case DynamicsPolicy::Orca:
      return "orca";
    case DynamicsPolicy::SocialForce:
      return "social_force";
    case DynamicsPolicy::Static:
      return "static";
  }
  return "orca";
}

DynamicsPolicy dynamics_policy_from_string(std::string_view name) {
  if (name == "orca") return DynamicsPolicy::Orca;
  if (name == "social_force") return DynamicsPolicy::SocialForce;
  if (name == "static") return DynamicsPolicy::Static;
  throw FormatError("unknown dynamics policy '" + std::string(name) + "'");
}

HumanAttributes sample_attributes(Rng& rng) {
  const double r = rng.uniform(kRadiusMin, kRadiusMax);
  const double v = rng.uniform(kSpeedMin, kSpeedMax);
  return {r, v};
}

ScenarioSpec gen_circle_crossing(const EnvPreset& p, Rng& rng, const RobotSpec& robot,
                                 const PlacementConfig& placement) {
  if (p.crossing != CrossingType::Circle) {
    throw Error("gen_circle_crossing needs a circle preset");
  }
  const double r = p.extent;
  ScenarioSpec spec = base_spec(p, robot, {0.0, -r}, {0.0, r});
  std::vector<Disc> starts{{spec.robot_start, robot.radius}};
  std::vector<Disc> goals{{spec.robot_goal, robot.radius}};

  for (int h = 0; h < p.n; ++h) {
    const HumanAttributes attr = sample_attributes(rng);
    bool placed = false;
    for (int attempt = 0; attempt < placement.max_attempts && !placed; ++attempt) {
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const Vec2 rim{r * std::cos(theta), r * std::sin(theta)};
      const Vec2 start = rim + jitter(rng, placement.perturbation);
      const Vec2 goal = -rim + jitter(rng, placement.perturbation);
      if (clear_of(starts, start, attr.radius, placement.clearance) &&
          clear_of(goals, goal, attr.radius, placement.clearance)) {
        starts.push_back({start, attr.radius});
        goals.push_back({goal, attr.radius});
        spec.humans.push_back({start, goal, attr.radius, attr.v_pref, DynamicsPolicy::Orca, false});
        placed = true;
      }
    }
    if (!placed) placement_failed(p, static_cast<std::size_t>(h));
  }
  return spec;
}

ScenarioSpec gen_square_crossing(const EnvPreset& p, Rng& rng, const RobotSpec& robot,
                                 const PlacementConfig& placement) {
  if (p.crossing != CrossingType::Square) {
    throw Error("gen_square_crossing needs a square preset");
  }
  const double half = p.extent / 2.0;
  ScenarioSpec spec = base_spec(p, robot, {0.0, -half}, {0.0, half});
  std::vector<Disc> starts{{spec.robot_start, robot.radius}};
  std::vector<Disc> goals{{spec.robot_goal, robot.radius}};

  for (int h = 0; h < p.n; ++h) {
    const HumanAttributes attr = sample_attributes(rng);
    bool placed = false;
    for (int attempt = 0; attempt < placement.max_attempts && !placed; ++attempt) {
      const double side = rng.bernoulli(0.5) ? -1.0 : 1.0;  // -1: starts in the left half
      const Vec2 start{side * rng.uniform(0.0, half), rng.uniform(-half, half)};
      const Vec2 goal{-side * rng.uniform(0.0, half), rng.uniform(-half, half)};
      if (clear_of(starts, start, attr.radius, placement.clearance) &&
          clear_of(goals, goal, attr.radius, placement.clearance)) {
        starts.push_back({start, attr.radius});
        goals.push_back({goal, attr.radius});
        spec.humans.push_back(
            {start, goal, attr.radius, attr.v_pref, DynamicsPolicy::Orca, true});
        placed = true;
      }
    }
    if (!placed) placement_failed(p, static_cast<std::size_t>(h));
  }
  return spec;
}

ScenarioSpec generate_scenario(const EnvPreset& p, Rng& rng, const RobotSpec& robot,
                               const PlacementConfig& placement) {
  return p.crossing == CrossingType::Circle ? gen_circle_crossing(p, rng, robot, placement)
                                            : gen_square_crossing(p, rng, robot, placement);
}

ScenarioSpec generate_scenario(const EnvPreset& p, std::uint64_t seed, const RobotSpec& robot,
                               const PlacementConfig& placement) {
  Rng rng(seed);
  ScenarioSpec spec = generate_scenario(p, rng, robot, placement);
  spec.seed = seed;
  return spec;
}

}  // namespace crowdnav
