#include "crowdnav_cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <initializer_list>

#include "crowdnav/error.hpp"
#include "crowdnav/learning/featurize.hpp"
#include "crowdnav/serialization.hpp"

namespace crowdnav::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::string_view what, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(what));
  }
}

template <typename T>
void read(const json& j, std::string_view key, T& out, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->template get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + "." + std::string(key) + ": " + e.what());
  }
}

template <typename T>
void read_optional(const json& j, std::string_view key, std::optional<T>& out, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  if (it->is_null()) {
    out.reset();
    return;
  }
  T value{};
  read(j, key, value, what);
  out = value;
}

/// Objects merge key by key; anything else replaces.
void merge_into(json& target, const json& patch) {
  if (!patch.is_object() || !target.is_object()) {
    target = patch;
    return;
  }
  for (const auto& [key, value] : patch.items()) merge_into(target[key], value);
}

std::uint64_t parse_seed(std::string_view text, std::string_view source) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(std::string(source) + ": invalid seed '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void RunConfig::validate() const {
  try {
    sim.validate();
    if (time_limit && !(*time_limit > 0.0)) throw Error("sim.time_limit must be positive");
    orca.validate();
    social_force.validate();
    reward.validate();
    schedule.validate();
    train_config(*this).validate();
    if (eval.mixture) eval.mixture->validate();
    if (eval.episodes_per_env == 0) throw Error("eval.episodes_per_env must be positive");
    parse_env_list(eval.envs);
    if (!(robot.spec.radius > 0.0) || !(robot.spec.v_pref > 0.0)) {
      throw Error("robot radius and v_pref must be positive");
    }
    if (robot.n_directions < 4) throw Error("robot.n_directions must be at least 4");
    if (!(robot.stop_radius >= 0.0)) throw Error("robot.stop_radius must be non-negative");
    PolicyOptions probe = policy_options(*this);
    probe.net = std::make_shared<ValueNet>(std::vector<std::size_t>{kFeatureSize, 1});
    make_policy(robot.policy, probe);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const RunConfig& cfg) {
  json sim = cfg.sim;
  sim["time_limit"] = cfg.time_limit ? json(*cfg.time_limit) : json(nullptr);
  return {
      {"seed", cfg.seed},
      {"sim", sim},
      {"orca", cfg.orca},
      {"social_force", cfg.social_force},
      {"reward", cfg.reward},
      {"schedule", cfg.schedule},
      {"eval",
       {{"episodes_per_env", cfg.eval.episodes_per_env},
        {"mixture", cfg.eval.mixture ? json(*cfg.eval.mixture) : json(nullptr)},
        {"envs", cfg.eval.envs},
        {"threads", cfg.eval.threads}}},
      {"robot",
       {{"radius", cfg.robot.spec.radius},
        {"v_pref", cfg.robot.spec.v_pref},
        {"policy", cfg.robot.policy},
        {"stop_radius", cfg.robot.stop_radius},
        {"n_directions", cfg.robot.n_directions}}},
      {"learning",
       {{"hidden_widths", cfg.learning.hidden_widths},
        {"learning_rate", cfg.learning.learning_rate},
        {"batch_size", cfg.learning.batch_size},
        {"replay_capacity", cfg.learning.replay_capacity},
        {"il_sweeps", cfg.learning.il_sweeps},
        {"il_batch_size", cfg.learning.il_batch_size},
        {"il_learning_rate", cfg.learning.il_learning_rate}}},
      {"paths", {{"output_dir", cfg.output_dir.string()}}},
  };
}

RunConfig config_from_json(const json& doc) {
  RunConfig cfg;
  try {
    reject_unknown(doc, "config",
                   {"seed", "sim", "orca", "social_force", "reward", "schedule", "eval", "robot",
                    "learning", "paths"});
    read(doc, "seed", cfg.seed, "config");

    if (const auto it = doc.find("sim"); it != doc.end()) {
      json sim = *it;
      if (!sim.is_object()) throw ConfigError("sim must be a JSON object");
      read_optional(sim, "time_limit", cfg.time_limit, "sim");
      sim.erase("time_limit");
      sim.get_to(cfg.sim);
    }
    if (const auto it = doc.find("orca"); it != doc.end()) it->get_to(cfg.orca);
    if (const auto it = doc.find("social_force"); it != doc.end()) it->get_to(cfg.social_force);
    if (const auto it = doc.find("reward"); it != doc.end()) it->get_to(cfg.reward);

    std::optional<std::size_t> episodes;
    double static_fraction = kDefaultCurriculumStaticFraction;
    if (const auto it = doc.find("learning"); it != doc.end()) {
      const json& l = *it;
      reject_unknown(l, "learning",
                     {"hidden_widths", "learning_rate", "batch_size", "replay_capacity",
                      "il_sweeps", "il_batch_size", "il_learning_rate", "episodes",
                      "static_fraction"});
      read(l, "hidden_widths", cfg.learning.hidden_widths, "learning");
      read(l, "learning_rate", cfg.learning.learning_rate, "learning");
      read(l, "batch_size", cfg.learning.batch_size, "learning");
      read(l, "replay_capacity", cfg.learning.replay_capacity, "learning");
      read(l, "il_sweeps", cfg.learning.il_sweeps, "learning");
      read(l, "il_batch_size", cfg.learning.il_batch_size, "learning");
      read(l, "il_learning_rate", cfg.learning.il_learning_rate, "learning");
      read_optional(l, "episodes", episodes, "learning");
      read(l, "static_fraction", static_fraction, "learning");
    }

    const auto sched = doc.find("schedule");
    if (sched == doc.end() || sched->is_string()) {
      const std::string name = sched == doc.end() ? "CD" : sched->get<std::string>();
      cfg.schedule = schedule_preset(name, episodes.value_or(10'000), static_fraction);
    } else {
      if (episodes) throw ConfigError("learning.episodes only applies to a named schedule preset");
      cfg.schedule = TrainingSchedule{};
      sched->get_to(cfg.schedule);
    }

    if (const auto it = doc.find("eval"); it != doc.end()) {
      const json& e = *it;
      reject_unknown(e, "eval", {"episodes_per_env", "mixture", "envs", "threads"});
      read(e, "episodes_per_env", cfg.eval.episodes_per_env, "eval");
      if (const auto m = e.find("mixture"); m != e.end()) {
        if (m->is_null()) {
          cfg.eval.mixture.reset();
        } else {
          CrowdMixture mixture;
          m->get_to(mixture);
          cfg.eval.mixture = mixture;
        }
      }
      read(e, "envs", cfg.eval.envs, "eval");
      read(e, "threads", cfg.eval.threads, "eval");
    }

    if (const auto it = doc.find("robot"); it != doc.end()) {
      const json& r = *it;
      reject_unknown(r, "robot", {"radius", "v_pref", "policy", "stop_radius", "n_directions"});
      read(r, "radius", cfg.robot.spec.radius, "robot");
      read(r, "v_pref", cfg.robot.spec.v_pref, "robot");
      read(r, "policy", cfg.robot.policy, "robot");
      read(r, "stop_radius", cfg.robot.stop_radius, "robot");
      read(r, "n_directions", cfg.robot.n_directions, "robot");
    }

    if (const auto it = doc.find("paths"); it != doc.end()) {
      reject_unknown(*it, "paths", {"output_dir"});
      std::string dir = cfg.output_dir.string();
      read(*it, "output_dir", dir, "paths");
      cfg.output_dir = dir;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override must look like dotted.path=value, got '" + std::string(assignment) +
                      "'");
  }
  const std::string_view path = assignment.substr(0, eq);
  const std::string text(assignment.substr(eq + 1));

  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t begin = 0;
  while (true) {
    const auto dot = path.find('.', begin);
    const std::string key(path.substr(begin, dot == std::string_view::npos ? path.npos : dot - begin));
    if (key.empty()) throw ConfigError("empty key in override path '" + std::string(path) + "'");
    if (node->is_null()) *node = json::object();
    if (!node->is_object()) {
      throw ConfigError("override path '" + std::string(path) + "' descends into a non-object");
    }
    node = &(*node)[key];
    if (dot == std::string_view::npos) break;
    begin = dot + 1;
  }
  *node = std::move(value);
}

RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides) {
  json doc = json::object();
  if (file) {
    std::string text;
    try {
      text = read_file(*file);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    const json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw ConfigError(file->string() + ": not valid JSON");
    if (!parsed.is_object()) throw ConfigError(file->string() + ": config must be a JSON object");
    merge_into(doc, parsed);
  }
  for (const std::string& o : overrides) apply_override(doc, o);
  if (const char* env = std::getenv("CROWDSIM_SEED"); env != nullptr && *env != '\0') {
    doc["seed"] = parse_seed(env, "CROWDSIM_SEED");
  }
  return config_from_json(doc);
}

TrainConfig train_config(const RunConfig& cfg) {
  TrainConfig t;
  t.reward = cfg.reward;
  t.sim = cfg.sim;
  t.time_limit = cfg.time_limit;
  t.models = {cfg.orca, cfg.social_force};
  t.robot = cfg.robot.spec;
  t.hidden_widths = cfg.learning.hidden_widths;
  t.learning_rate = cfg.learning.learning_rate;
  t.batch_size = cfg.learning.batch_size;
  t.replay_capacity = cfg.learning.replay_capacity;
  t.n_directions = cfg.robot.n_directions;
  t.imitation.sweeps = cfg.learning.il_sweeps;
  t.imitation.batch_size = cfg.learning.il_batch_size;
  t.imitation.learning_rate = cfg.learning.il_learning_rate;
  t.imitation.seed = cfg.seed;
  return t;
}

EvalSettings eval_settings(const RunConfig& cfg, const CrowdMixture& mixture) {
  EvalSettings s;
  s.mixture = mixture;
  s.episodes_per_env = cfg.eval.episodes_per_env;
  s.seed = cfg.seed;
  s.sim = cfg.sim;
  s.time_limit = cfg.time_limit;
  s.models = {cfg.orca, cfg.social_force};
  s.robot = cfg.robot.spec;
  s.threads = cfg.eval.threads;
  return s;
}

PolicyOptions policy_options(const RunConfig& cfg) {
  PolicyOptions o;
  o.dt = cfg.sim.dt;
  o.orca = cfg.orca;
  o.social_force = cfg.social_force;
  o.stop_radius = cfg.robot.stop_radius;
  o.n_directions = cfg.robot.n_directions;
  o.reward = cfg.reward;
  return o;
}

std::vector<PresetName> parse_env_list(std::string_view spec) {
  if (spec == "diverse4" || spec == "Diverse-4") return {kDiverse4.begin(), kDiverse4.end()};
  std::vector<PresetName> envs;
  std::size_t begin = 0;
  while (begin <= spec.size()) {
    const auto comma = spec.find(',', begin);
    const auto item = spec.substr(begin, comma == std::string_view::npos ? spec.npos : comma - begin);
    try {
      envs.push_back(preset_name_from_string(item));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return envs;
}

CrowdMixture default_eval_mixture(const std::vector<PresetName>& envs) {
  for (PresetName e : envs) {
    if (e != PresetName::SimpleCircle && e != PresetName::SimpleSquare) return {0.5, 0.0};
  }
  return {1.0, 0.0};
}

}  // namespace crowdnav::cli
