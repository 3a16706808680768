#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "crowdnav/engine.hpp"
#include "crowdnav/environments.hpp"
#include "crowdnav/learning/reward.hpp"
#include "crowdnav/learning/schedule.hpp"
#include "crowdnav/learning/trainer.hpp"
#include "crowdnav/learning/value_net.hpp"
#include "crowdnav/orca.hpp"
#include "crowdnav/social_force.hpp"

namespace crowdnav {

using nlohmann::json;

// Parsing is strict: unknown keys and wrong types raise FormatError. Missing
// keys keep the value already held by the target, so partial documents
// override defaults.

void to_json(json& j, const Vec2& v);
void from_json(const json& j, Vec2& v);

void to_json(json& j, const SFParams& p);
void from_json(const json& j, SFParams& p);

void to_json(json& j, const OrcaConfig& c);
void from_json(const json& j, OrcaConfig& c);

void to_json(json& j, const SimConfig& c);
void from_json(const json& j, SimConfig& c);

void to_json(json& j, const CrowdMixture& m);
void from_json(const json& j, CrowdMixture& m);

void to_json(json& j, const RewardParams& p);
void from_json(const json& j, RewardParams& p);

void to_json(json& j, const RobotSpec& r);
void from_json(const json& j, RobotSpec& r);

void to_json(json& j, const ScenarioSpec& s);
void from_json(const json& j, ScenarioSpec& s);

void to_json(json& j, const TrainingSchedule& s);
void from_json(const json& j, TrainingSchedule& s);

/// {"widths": [...], "weights": [[...] per layer], "biases": [[...] per layer]}
json net_to_json(const ValueNet& net);
ValueNet net_from_json(const json& j);

/// Shortest-form decimal with 9 significant digits.
std::string format_real(double x);

/// Writes to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

void save_net(const std::filesystem::path& path, const ValueNet& net);
ValueNet load_net(const std::filesystem::path& path);

std::string training_log_csv(const std::vector<TrainingLogRow>& log);

/// Trajectory as JSON Lines: {"scenario": ...}, then one
/// {"t", "agents": [{"id", "x", "y", "vx", "vy", "r"}]} line per frame
/// (robot is id 0), then {"outcome": {"kind", "time"}}.
std::string trajectory_jsonl(const EpisodeRecord& rec);

/// Inverse of trajectory_jsonl. Goals, preferred speeds and goal flags are
/// restored from the scenario header.
EpisodeRecord parse_trajectory(std::string_view jsonl);
EpisodeRecord load_trajectory(const std::filesystem::path& path);

}  // namespace crowdnav
