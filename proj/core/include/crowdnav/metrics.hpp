#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crowdnav/engine.hpp"
#include "crowdnav/policy.hpp"

namespace crowdnav {

struct EpisodeMetrics {
  EpisodeOutcome outcome;
  std::optional<double> time_to_goal;  ///< success only
  /// Closest robot-human surface distance, floored at 0 (and forced to 0 on
  /// collision). Absent when the episode has no humans.
  std::optional<double> min_distance;
  std::size_t discomfort_steps = 0;
  std::size_t total_steps = 0;
};

/// Per-episode measures. A step counts as discomfort when, in the frame it
/// produces, the robot is closer than cfg.discomfort_dist to some human.
/// Throws EmptyInput for a record without frames.
EpisodeMetrics episode_metrics(const EpisodeRecord& rec, const SimConfig& cfg);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  ///< population standard deviation
};

struct AggregateReport {
  double success_rate = 0.0;
  double collision_rate = 0.0;
  double timeout_rate = 0.0;
  std::optional<MeanStd> time;  ///< over successful episodes
  double discomfort_rate = 0.0;  ///< pooled over all steps of all episodes
  std::optional<MeanStd> d_T;    ///< over episodes with humans
  std::size_t episode_count = 0;
};

/// Throws EmptyInput for an empty list.
AggregateReport aggregate(std::span<const EpisodeMetrics> ms);

struct EvalSettings {
  CrowdMixture mixture{0.5, 0.0};
  std::size_t episodes_per_env = 50;
  std::uint64_t seed = 0;
  SimConfig sim;
  /// Per-environment default when unset.
  std::optional<double> time_limit;
  CrowdModels models;
  RobotSpec robot;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
  bool keep_records = false;
};

struct EpisodeResult {
  std::uint64_t seed = 0;
  EpisodeMetrics metrics;
  std::optional<EpisodeRecord> record;
};

struct EnvEvaluation {
  PresetName env = PresetName::SimpleCircle;
  std::vector<EpisodeResult> episodes;
  AggregateReport report;
};

struct EvaluationResult {
  std::vector<EnvEvaluation> envs;
  AggregateReport pooled;
};

/// Seed of evaluation episode `index` in `env`; independent of which other
/// environments are evaluated alongside it.
std::uint64_t eval_episode_seed(std::uint64_t base, PresetName env, std::size_t index);

/// Generates, populates and runs one seeded episode.
EpisodeRecord run_seeded_episode(PresetName env, std::uint64_t seed, const Policy& robot_policy,
                                 const EvalSettings& settings);

/// Runs episodes_per_env episodes in each environment, in parallel, and
/// reduces them in index order. Deterministic for a fixed seed.
EvaluationResult evaluate(const Policy& robot_policy, std::span<const PresetName> envs,
                          const EvalSettings& settings);

/// evaluate() over the large and dense circle and square environments.
EvaluationResult diverse4_eval(const Policy& robot_policy, const EvalSettings& settings);

std::string report_csv_header();
std::string report_csv_row(std::string_view policy, std::string_view training,
                           std::string_view env, const AggregateReport& r);

}  // namespace crowdnav
