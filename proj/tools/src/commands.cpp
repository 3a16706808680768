#include "crowdnav_cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "crowdnav/error.hpp"
#include "crowdnav/learning/imitation.hpp"
#include "crowdnav/learning/value_policy.hpp"
#include "crowdnav/metrics.hpp"
#include "crowdnav/serialization.hpp"
#include "crowdnav/svg.hpp"
#include "crowdnav_cli/config.hpp"

namespace crowdnav::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> sets;

  void add_to(CLI::App& cmd) {
    cmd.add_option("-c,--config", config_file, "JSON run configuration");
    cmd.add_option("--set", sets, "override a config key, e.g. --set orca.time_horizon=3")
        ->type_name("PATH=VALUE");
  }

  RunConfig load(std::vector<std::string> extra = {}) const {
    std::vector<std::string> all = sets;
    all.insert(all.end(), extra.begin(), extra.end());
    std::optional<fs::path> file;
    if (!config_file.empty()) file = config_file;
    return load_config(file, all);
  }
};

void write_output(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file_atomic(path, content);
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

// --- train -----------------------------------------------------------------

struct TrainOptions {
  CommonOptions common;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> episodes;
  std::string net_path;
  std::string log_path;
};

int cmd_train(const TrainOptions& o, std::ostream& out) {
  std::vector<std::string> extra;
  if (!o.preset.empty()) extra.push_back("schedule=" + json_string(o.preset));
  if (o.episodes) extra.push_back(fmt::format("learning.episodes={}", *o.episodes));
  RunConfig cfg = o.common.load(extra);
  if (o.seed) cfg.seed = *o.seed;

  const fs::path net_path = o.net_path.empty() ? cfg.output_dir / "net.json" : fs::path(o.net_path);
  const fs::path log_path =
      o.log_path.empty() ? cfg.output_dir / "train_log.csv" : fs::path(o.log_path);

  const TrainResult result = train(cfg.schedule, cfg.seed, train_config(cfg));
  write_output(net_path, net_to_json(result.net).dump() + "\n");
  write_output(log_path, training_log_csv(result.log));

  std::size_t successes = 0;
  for (const TrainingLogRow& row : result.log) successes += row.outcome == OutcomeKind::Success;
  out << fmt::format("trained {} episodes ({}), {} successes\n", result.log.size(),
                     cfg.schedule.name, successes);
  out << fmt::format("net: {}\nlog: {}\n", net_path.string(), log_path.string());
  return kExitOk;
}

// --- eval ------------------------------------------------------------------

struct EvalOptions {
  CommonOptions common;
  std::string policy;
  std::string envs;
  std::optional<std::size_t> episodes;
  std::optional<std::uint64_t> seed;
  std::string net_path;
  std::string training = "-";
  std::string out_dir;
  std::optional<double> orca_fraction;
  std::optional<double> static_fraction;
  std::optional<std::size_t> threads;
  bool trajectories = false;
};

ordered_json episode_line(PresetName env, std::size_t index, const EpisodeResult& r) {
  const EpisodeMetrics& m = r.metrics;
  ordered_json j;
  j["env"] = to_string(env);
  j["episode"] = index;
  j["seed"] = r.seed;
  j["outcome"] = to_string(m.outcome.kind);
  j["time"] = m.outcome.time_elapsed;
  j["time_to_goal"] = m.time_to_goal ? ordered_json(*m.time_to_goal) : ordered_json(nullptr);
  j["min_distance"] = m.min_distance ? ordered_json(*m.min_distance) : ordered_json(nullptr);
  j["discomfort_steps"] = m.discomfort_steps;
  j["total_steps"] = m.total_steps;
  return j;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  std::vector<std::string> extra;
  if (!o.policy.empty()) extra.push_back("robot.policy=" + json_string(o.policy));
  if (!o.envs.empty()) extra.push_back("eval.envs=" + json_string(o.envs));
  if (o.episodes) extra.push_back(fmt::format("eval.episodes_per_env={}", *o.episodes));
  if (o.threads) extra.push_back(fmt::format("eval.threads={}", *o.threads));
  RunConfig cfg = o.common.load(extra);
  if (o.seed) cfg.seed = *o.seed;

  const std::vector<PresetName> envs = parse_env_list(cfg.eval.envs);
  CrowdMixture mixture = cfg.eval.mixture.value_or(default_eval_mixture(envs));
  if (o.orca_fraction) mixture.orca_fraction = *o.orca_fraction;
  if (o.static_fraction) mixture.static_fraction = *o.static_fraction;
  try {
    mixture.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  PolicyOptions popts = policy_options(cfg);
  if (!o.net_path.empty()) popts.net = std::make_shared<const ValueNet>(load_net(o.net_path));
  if (cfg.robot.policy == "value" && !popts.net) {
    throw ConfigError("policy 'value' needs a trained network (--net)");
  }
  const std::unique_ptr<Policy> policy = make_policy(cfg.robot.policy, popts);

  EvalSettings settings = eval_settings(cfg, mixture);
  settings.keep_records = o.trajectories;
  const EvaluationResult result = evaluate(*policy, envs, settings);

  const fs::path dir = o.out_dir.empty() ? cfg.output_dir : fs::path(o.out_dir);
  std::string csv = report_csv_header() + "\n";
  std::string jsonl;
  for (const EnvEvaluation& e : result.envs) {
    csv += report_csv_row(policy->id(), o.training, to_string(e.env), e.report) + "\n";
    for (std::size_t i = 0; i < e.episodes.size(); ++i) {
      jsonl += episode_line(e.env, i, e.episodes[i]).dump() + "\n";
      if (o.trajectories && e.episodes[i].record) {
        write_output(dir / "trajectories" / fmt::format("{}_{:04}.jsonl", to_string(e.env), i),
                     trajectory_jsonl(*e.episodes[i].record));
      }
    }
  }
  csv += report_csv_row(policy->id(), o.training, "pooled", result.pooled) + "\n";
  write_output(dir / "eval.csv", csv);
  write_output(dir / "episodes.jsonl", jsonl);

  out << csv;
  return kExitOk;
}

// --- replay ----------------------------------------------------------------

struct ReplayOptions {
  std::string trajectory;
  std::string svg_dir;
  std::vector<std::size_t> frames;
  double scale = SvgStyle{}.pixels_per_metre;
};

int cmd_replay(const ReplayOptions& o, std::ostream& out) {
  const EpisodeRecord rec = load_trajectory(o.trajectory);
  std::vector<std::size_t> frames = o.frames;
  if (frames.empty()) {
    for (std::size_t k = 0; k < rec.frames.size(); ++k) frames.push_back(k);
  }
  for (std::size_t k : frames) {
    if (k >= rec.frames.size()) {
      throw ConfigError(fmt::format("frame {} out of range: the record has {} frames", k,
                                    rec.frames.size()));
    }
  }
  if (!(o.scale > 0.0)) throw ConfigError("--scale must be positive");
  SvgStyle style;
  style.pixels_per_metre = o.scale;
  for (std::size_t k : frames) {
    const fs::path path = fs::path(o.svg_dir) / fmt::format("frame_{:04}.svg", k);
    write_output(path, render_frame_svg(rec, k, style));
    out << path.string() << "\n";
  }
  return kExitOk;
}

// --- valuemap --------------------------------------------------------------

struct ValueMapOptions {
  CommonOptions common;
  std::string net_path;
  std::string trajectory;
  std::size_t frame = 0;
  std::string out_path;
};

int cmd_valuemap(const ValueMapOptions& o, std::ostream& out) {
  const RunConfig cfg = o.common.load();
  const ValueNet net = load_net(o.net_path);
  const EpisodeRecord rec = load_trajectory(o.trajectory);
  if (o.frame >= rec.frames.size()) {
    throw ConfigError(fmt::format("frame {} out of range: the record has {} frames", o.frame,
                                  rec.frames.size()));
  }
  const Observation obs = observation_from_frame(rec.frames[o.frame]);
  const ActionSet set = build_action_set(obs.robot.v_pref, cfg.robot.n_directions);
  const std::vector<double> values = lookahead_values(net, obs, set, cfg.sim.dt, cfg.reward);

  std::string csv = "speed,direction,value\n";
  for (std::size_t k = 0; k < set.size(); ++k) {
    csv += fmt::format("{},{},{:.17g}\n", format_real(set.speed(k)), format_real(set.direction(k)),
                       values[k]);
  }
  if (o.out_path.empty()) {
    out << csv;
  } else {
    write_output(o.out_path, csv);
  }
  return kExitOk;
}

// --- gen-scenario ----------------------------------------------------------

struct GenScenarioOptions {
  CommonOptions common;
  std::string preset = "simple-circle";
  std::optional<std::uint64_t> seed;
  std::optional<double> orca_fraction;
  std::optional<double> static_fraction;
  std::string out_path;
};

int cmd_gen_scenario(const GenScenarioOptions& o, std::ostream& out) {
  RunConfig cfg = o.common.load();
  if (o.seed) cfg.seed = *o.seed;
  PresetName env;
  try {
    env = preset_name_from_string(o.preset);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  CrowdMixture mixture = cfg.eval.mixture.value_or(default_eval_mixture({env}));
  if (o.orca_fraction) mixture.orca_fraction = *o.orca_fraction;
  if (o.static_fraction) mixture.static_fraction = *o.static_fraction;
  try {
    mixture.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  Rng rng(cfg.seed);
  ScenarioSpec spec = generate_scenario(preset(env), rng, cfg.robot.spec);
  spec.seed = cfg.seed;
  spec = assign_policies(std::move(spec), mixture, rng);

  const std::string text = json(spec).dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_output(o.out_path, text);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crowd navigation simulator, trainer and evaluator", "crowdnav"};
  app.require_subcommand(1);

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "train a value network over a schedule");
  train_opts.common.add_to(*train_cmd);
  train_cmd->add_option("--preset", train_opts.preset, "schedule preset: BL, D, C or CD");
  train_cmd->add_option("--seed", train_opts.seed, "base seed");
  train_cmd->add_option("--episodes", train_opts.episodes, "total training episodes");
  train_cmd->add_option("--net", train_opts.net_path, "network output path");
  train_cmd->add_option("--log", train_opts.log_path, "training log CSV path");

  EvalOptions eval_opts;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a robot policy");
  eval_opts.common.add_to(*eval_cmd);
  eval_cmd->add_option("--policy", eval_opts.policy,
                       "orca, social_force, straight_stop, static, value or random");
  eval_cmd->add_option("--envs", eval_opts.envs, "diverse4 or a comma-separated preset list");
  eval_cmd->add_option("--episodes", eval_opts.episodes, "episodes per environment");
  eval_cmd->add_option("--seed", eval_opts.seed, "base seed");
  eval_cmd->add_option("--net", eval_opts.net_path, "trained network for the value policy");
  eval_cmd->add_option("--training", eval_opts.training, "label for the training column");
  eval_cmd->add_option("--out", eval_opts.out_dir, "output directory");
  eval_cmd->add_option("--orca-fraction", eval_opts.orca_fraction, "crowd ORCA share");
  eval_cmd->add_option("--static-fraction", eval_opts.static_fraction, "crowd static share");
  eval_cmd->add_option("--threads", eval_opts.threads, "worker threads, 0 = all cores");
  eval_cmd->add_flag("--trajectories", eval_opts.trajectories, "write every episode's trajectory");

  ReplayOptions replay_opts;
  auto* replay_cmd = app.add_subcommand("replay", "render a recorded trajectory to SVG");
  replay_cmd->add_option("trajectory", replay_opts.trajectory, "trajectory JSONL")->required();
  replay_cmd->add_option("--svg", replay_opts.svg_dir, "output directory")->required();
  replay_cmd->add_option("--frame", replay_opts.frames, "frame index (repeatable; default all)");
  replay_cmd->add_option("--scale", replay_opts.scale, "pixels per metre");

  ValueMapOptions vm_opts;
  auto* vm_cmd = app.add_subcommand("valuemap", "lookahead values over the action set");
  vm_opts.common.add_to(*vm_cmd);
  vm_cmd->add_option("--net", vm_opts.net_path, "trained network")->required();
  vm_cmd->add_option("--trajectory", vm_opts.trajectory, "trajectory JSONL")->required();
  vm_cmd->add_option("--frame", vm_opts.frame, "frame index")->required();
  vm_cmd->add_option("--out", vm_opts.out_path, "CSV path (default stdout)");

  GenScenarioOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen-scenario", "write one seeded scenario as JSON");
  gen_opts.common.add_to(*gen_cmd);
  gen_cmd->add_option("--preset", gen_opts.preset, "environment preset");
  gen_cmd->add_option("--seed", gen_opts.seed, "scenario seed");
  gen_cmd->add_option("--orca-fraction", gen_opts.orca_fraction, "crowd ORCA share");
  gen_cmd->add_option("--static-fraction", gen_opts.static_fraction, "crowd static share");
  gen_cmd->add_option("--out", gen_opts.out_path, "JSON path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train_opts, out);
    if (*eval_cmd) return cmd_eval(eval_opts, out);
    if (*replay_cmd) return cmd_replay(replay_opts, out);
    if (*vm_cmd) return cmd_valuemap(vm_opts, out);
    if (*gen_cmd) return cmd_gen_scenario(gen_opts, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownPreset& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace crowdnav::cli
