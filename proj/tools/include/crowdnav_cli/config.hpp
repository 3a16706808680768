#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "crowdnav/engine.hpp"
#include "crowdnav/learning/reward.hpp"
#include "crowdnav/learning/schedule.hpp"
#include "crowdnav/learning/trainer.hpp"
#include "crowdnav/metrics.hpp"
#include "crowdnav/orca.hpp"
#include "crowdnav/policy_factory.hpp"
#include "crowdnav/social_force.hpp"

namespace crowdnav::cli {

/// Invalid configuration or usage; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalSection {
  std::size_t episodes_per_env = 50;
  /// Crowd composition; the simple presets default to all-ORCA and the
  /// large/dense presets to an even ORCA/social-force split when unset.
  std::optional<CrowdMixture> mixture;
  std::string envs = "diverse4";
  std::size_t threads = 0;
};

struct RobotSection {
  RobotSpec spec;
  std::string policy = "orca";
  double stop_radius = 0.7;
  std::size_t n_directions = 16;
};

struct LearningSection {
  std::vector<std::size_t> hidden_widths = {100, 100};
  double learning_rate = 1e-3;
  std::size_t batch_size = 100;
  std::size_t replay_capacity = 100'000;
  std::size_t il_sweeps = 50;
  std::size_t il_batch_size = 100;
  double il_learning_rate = 0.01;
};

struct RunConfig {
  std::uint64_t seed = 0;
  SimConfig sim;
  /// Per-environment default when unset.
  std::optional<double> time_limit;
  OrcaConfig orca;
  SFParams social_force;
  RewardParams reward;
  TrainingSchedule schedule = schedule_preset("CD");
  EvalSection eval;
  RobotSection robot;
  LearningSection learning;
  std::filesystem::path output_dir = "out";

  /// Throws ConfigError.
  void validate() const;
};

/// Full document with every key at its current value.
nlohmann::json to_json(const RunConfig& cfg);

/// Strict schema check: unknown keys, wrong types and unresolvable presets or
/// policy ids raise ConfigError. Missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& doc);

/// Applies `dotted.path=value` to a config document. The value is parsed as
/// JSON and taken as a plain string otherwise.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Defaults, then the file (if any), then overrides, then CROWDSIM_SEED.
RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides);

TrainConfig train_config(const RunConfig& cfg);
EvalSettings eval_settings(const RunConfig& cfg, const CrowdMixture& mixture);
PolicyOptions policy_options(const RunConfig& cfg);

/// "diverse4" or a comma-separated list of preset names.
std::vector<PresetName> parse_env_list(std::string_view spec);

/// Default crowd composition of an evaluation run over `envs`.
CrowdMixture default_eval_mixture(const std::vector<PresetName>& envs);

}  // namespace crowdnav::cli
