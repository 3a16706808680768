#include "crowdnav/serialization.hpp"

#include <fmt/format.h>

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "crowdnav/error.hpp"

namespace crowdnav {

namespace {

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
}

void reject_unknown(const json& j, std::string_view what, std::initializer_list<std::string_view> keys) {
  require_object(j, what);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view k : keys) known = known || key == k;
    if (!known) throw FormatError("unknown key '" + key + "' in " + std::string(what));
  }
}

template <typename T>
void read(const json& j, std::string_view key, T& out, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->template get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + "." + std::string(key) + ": " + e.what());
  }
}

}  // namespace

void to_json(json& j, const Vec2& v) { j = json::array({v.x, v.y}); }

void from_json(const json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("a 2-D vector must be [x, y]");
  }
  v = {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const SFParams& p) {
  json walls = json::array();
  for (const Segment& s : p.boundary_segments) walls.push_back({{"a", s.a}, {"b", s.b}});
  json attractors = json::array();
  for (const Attractor& a : p.attractors) {
    attractors.push_back({{"point", a.point}, {"strength", a.strength}});
  }
  j = {{"tau", p.tau},
       {"V0", p.V0},
       {"sigma", p.sigma},
       {"lambda", p.lambda},
       {"epsilon", p.epsilon},
       {"speed_cap_factor", p.speed_cap_factor},
       {"boundary_segments", walls},
       {"attractors", attractors}};
}

void from_json(const json& j, SFParams& p) {
  constexpr std::string_view what = "social_force";
  reject_unknown(j, what, {"tau", "V0", "sigma", "lambda", "epsilon", "speed_cap_factor",
                           "boundary_segments", "attractors"});
  read(j, "tau", p.tau, what);
  read(j, "V0", p.V0, what);
  read(j, "sigma", p.sigma, what);
  read(j, "lambda", p.lambda, what);
  read(j, "epsilon", p.epsilon, what);
  read(j, "speed_cap_factor", p.speed_cap_factor, what);
  if (const auto it = j.find("boundary_segments"); it != j.end()) {
    p.boundary_segments.clear();
    for (const json& s : *it) {
      reject_unknown(s, "social_force.boundary_segments[]", {"a", "b"});
      p.boundary_segments.push_back({s.at("a").get<Vec2>(), s.at("b").get<Vec2>()});
    }
  }
  if (const auto it = j.find("attractors"); it != j.end()) {
    p.attractors.clear();
    for (const json& a : *it) {
      reject_unknown(a, "social_force.attractors[]", {"point", "strength"});
      p.attractors.push_back({a.at("point").get<Vec2>(), a.at("strength").get<double>()});
    }
  }
}

void to_json(json& j, const OrcaConfig& c) {
  j = {{"time_horizon", c.time_horizon},
       {"neighbor_dist", c.neighbor_dist},
       {"max_neighbors", c.max_neighbors},
       {"reciprocity_share", c.reciprocity_share},
       {"safety_margin", c.safety_margin}};
}

void from_json(const json& j, OrcaConfig& c) {
  constexpr std::string_view what = "orca";
  reject_unknown(j, what,
                 {"time_horizon", "neighbor_dist", "max_neighbors", "reciprocity_share", "safety_margin"});
  read(j, "time_horizon", c.time_horizon, what);
  read(j, "neighbor_dist", c.neighbor_dist, what);
  read(j, "max_neighbors", c.max_neighbors, what);
  read(j, "reciprocity_share", c.reciprocity_share, what);
  read(j, "safety_margin", c.safety_margin, what);
}

void to_json(json& j, const SimConfig& c) {
  j = {{"dt", c.dt},
       {"time_limit", c.time_limit},
       {"discomfort_dist", c.discomfort_dist},
       {"robot_visible", c.robot_visible}};
}

void from_json(const json& j, SimConfig& c) {
  constexpr std::string_view what = "sim";
  reject_unknown(j, what, {"dt", "time_limit", "discomfort_dist", "robot_visible"});
  read(j, "dt", c.dt, what);
  read(j, "time_limit", c.time_limit, what);
  read(j, "discomfort_dist", c.discomfort_dist, what);
  read(j, "robot_visible", c.robot_visible, what);
}

void to_json(json& j, const CrowdMixture& m) {
  j = {{"orca_fraction", m.orca_fraction}, {"static_fraction", m.static_fraction}};
}

void from_json(const json& j, CrowdMixture& m) {
  constexpr std::string_view what = "mixture";
  reject_unknown(j, what, {"orca_fraction", "static_fraction"});
  read(j, "orca_fraction", m.orca_fraction, what);
  read(j, "static_fraction", m.static_fraction, what);
}

void to_json(json& j, const RewardParams& p) {
  j = {{"success_reward", p.success_reward},
       {"collision_penalty", p.collision_penalty},
       {"discomfort_penalty_scale", p.discomfort_penalty_scale},
       {"discomfort_dist", p.discomfort_dist},
       {"gamma", p.gamma}};
}

void from_json(const json& j, RewardParams& p) {
  constexpr std::string_view what = "reward";
  reject_unknown(j, what, {"success_reward", "collision_penalty", "discomfort_penalty_scale",
                           "discomfort_dist", "gamma"});
  read(j, "success_reward", p.success_reward, what);
  read(j, "collision_penalty", p.collision_penalty, what);
  read(j, "discomfort_penalty_scale", p.discomfort_penalty_scale, what);
  read(j, "discomfort_dist", p.discomfort_dist, what);
  read(j, "gamma", p.gamma, what);
}

void to_json(json& j, const RobotSpec& r) { j = {{"radius", r.radius}, {"v_pref", r.v_pref}}; }

void from_json(const json& j, RobotSpec& r) {
  constexpr std::string_view what = "robot";
  reject_unknown(j, what, {"radius", "v_pref"});
  read(j, "radius", r.radius, what);
  read(j, "v_pref", r.v_pref, what);
}

void to_json(json& j, const ScenarioSpec& s) {
  json humans = json::array();
  for (const HumanSpec& h : s.humans) {
    humans.push_back({{"start", h.start},
                      {"goal", h.goal},
                      {"radius", h.radius},
                      {"v_pref", h.v_pref},
                      {"policy", to_string(h.policy)},
                      {"static_after_goal", h.static_after_goal}});
  }
  j = {{"preset", to_string(s.preset.name)},
       {"seed", s.seed},
       {"robot",
        {{"start", s.robot_start},
         {"goal", s.robot_goal},
         {"radius", s.robot.radius},
         {"v_pref", s.robot.v_pref}}},
       {"humans", humans}};
}

void from_json(const json& j, ScenarioSpec& s) {
  reject_unknown(j, "scenario", {"preset", "seed", "robot", "humans"});
  try {
    s.preset = preset(j.at("preset").get<std::string>());
    s.seed = j.at("seed").get<std::uint64_t>();
    const json& r = j.at("robot");
    reject_unknown(r, "scenario.robot", {"start", "goal", "radius", "v_pref"});
    s.robot_start = r.at("start").get<Vec2>();
    s.robot_goal = r.at("goal").get<Vec2>();
    s.robot.radius = r.at("radius").get<double>();
    s.robot.v_pref = r.at("v_pref").get<double>();
    s.humans.clear();
    for (const json& h : j.at("humans")) {
      reject_unknown(h, "scenario.humans[]",
                     {"start", "goal", "radius", "v_pref", "policy", "static_after_goal"});
      HumanSpec hs;
      hs.start = h.at("start").get<Vec2>();
      hs.goal = h.at("goal").get<Vec2>();
      hs.radius = h.at("radius").get<double>();
      hs.v_pref = h.at("v_pref").get<double>();
      hs.policy = dynamics_policy_from_string(h.at("policy").get<std::string>());
      hs.static_after_goal = h.at("static_after_goal").get<bool>();
      s.humans.push_back(hs);
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
}

void to_json(json& j, const TrainingSchedule& s) {
  json phases = json::array();
  for (const TrainingPhase& p : s.phases) {
    phases.push_back(
        {{"begin", p.begin}, {"end", p.end}, {"env", to_string(p.env)}, {"mixture", p.mixture}});
  }
  j = {{"name", s.name},
       {"phases", phases},
       {"total_episodes", s.total_episodes},
       {"epsilon_start", s.epsilon_start},
       {"epsilon_end", s.epsilon_end},
       {"epsilon_decay_episodes", s.epsilon_decay_episodes},
       {"il_episodes", s.il_episodes}};
}

void from_json(const json& j, TrainingSchedule& s) {
  constexpr std::string_view what = "schedule";
  reject_unknown(j, what, {"name", "phases", "total_episodes", "epsilon_start", "epsilon_end",
                           "epsilon_decay_episodes", "il_episodes"});
  read(j, "name", s.name, what);
  read(j, "total_episodes", s.total_episodes, what);
  read(j, "epsilon_start", s.epsilon_start, what);
  read(j, "epsilon_end", s.epsilon_end, what);
  read(j, "epsilon_decay_episodes", s.epsilon_decay_episodes, what);
  read(j, "il_episodes", s.il_episodes, what);
  if (const auto it = j.find("phases"); it != j.end()) {
    s.phases.clear();
    for (const json& p : *it) {
      reject_unknown(p, "schedule.phases[]", {"begin", "end", "env", "mixture"});
      TrainingPhase phase;
      phase.begin = p.at("begin").get<std::size_t>();
      phase.end = p.at("end").get<std::size_t>();
      phase.env = preset_name_from_string(p.at("env").get<std::string>());
      if (p.contains("mixture")) phase.mixture = p.at("mixture").get<CrowdMixture>();
      s.phases.push_back(phase);
    }
  }
}

json net_to_json(const ValueNet& net) {
  json weights = json::array();
  json biases = json::array();
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto w = net.weights(l);
    const auto b = net.biases(l);
    weights.push_back(std::vector<double>(w.begin(), w.end()));
    biases.push_back(std::vector<double>(b.begin(), b.end()));
  }
  return {{"widths", net.widths()}, {"weights", weights}, {"biases", biases}};
}

ValueNet net_from_json(const json& j) {
  reject_unknown(j, "network", {"widths", "weights", "biases"});
  try {
    ValueNet net(j.at("widths").get<std::vector<std::size_t>>());
    const json& weights = j.at("weights");
    const json& biases = j.at("biases");
    if (weights.size() != net.layer_count() || biases.size() != net.layer_count()) {
      throw ShapeMismatch("network layer count disagrees with widths");
    }
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      const auto w = weights[l].get<std::vector<double>>();
      const auto b = biases[l].get<std::vector<double>>();
      auto dw = net.weights(l);
      auto db = net.biases(l);
      if (w.size() != dw.size() || b.size() != db.size()) {
        throw ShapeMismatch("network layer " + std::to_string(l) + " has the wrong size");
      }
      std::copy(w.begin(), w.end(), dw.begin());
      std::copy(b.begin(), b.end(), db.begin());
    }
    return net;
  } catch (const json::exception& e) {
    throw FormatError(std::string("network: ") + e.what());
  }
}

std::string format_real(double x) {
  if (x == 0.0) return "0";  // folds -0
  return fmt::format("{:.9g}", x);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_net(const std::filesystem::path& path, const ValueNet& net) {
  write_file_atomic(path, net_to_json(net).dump() + "\n");
}

ValueNet load_net(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return net_from_json(j);
}

std::string training_log_csv(const std::vector<TrainingLogRow>& log) {
  std::string out = "episode,phase,outcome,return,loss,epsilon\n";
  for (const TrainingLogRow& r : log) {
    out += fmt::format("{},{},{},{},{},{}\n", r.episode, r.phase, to_string(r.outcome),
                       format_real(r.ret), format_real(r.loss), format_real(r.epsilon));
  }
  return out;
}

}  // namespace crowdnav
