#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "crowdnav/learning/featurize.hpp"
#include "crowdnav/learning/imitation.hpp"
#include "crowdnav/learning/value_policy.hpp"
#include "crowdnav/policies.hpp"
#include "crowdnav/serialization.hpp"
#include "crowdnav_cli/commands.hpp"
#include "crowdnav_cli/config.hpp"

using namespace crowdnav;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "crowdnav_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Small network and imitation budget so training stays fast.
const std::vector<std::string> kSmallTraining = {
    "--set", "learning.hidden_widths=[16]", "--set", "learning.il_sweeps=2"};

}  // namespace

TEST_CASE("config defaults round-trip through JSON") {
  const cli::RunConfig cfg;
  const cli::RunConfig back = cli::config_from_json(cli::to_json(cfg));
  CHECK(cli::to_json(back) == cli::to_json(cfg));
  CHECK(back.schedule.name == "CD");
  CHECK(back.robot.policy == "orca");
}

TEST_CASE("config is strict") {
  nlohmann::json doc = {{"sim", {{"dt", 0.25}, {"speed", 2}}}};
  CHECK_THROWS_AS(cli::config_from_json(doc), cli::ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"colour", "red"}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"robot", {{"policy", "teleport"}}}}), cli::ConfigError);
  CHECK_THROWS_WITH_AS(cli::config_from_json({{"schedule", "XL"}}),
                       doctest::Contains("unknown schedule preset"), cli::ConfigError);
  CHECK_THROWS_AS(cli::config_from_json({{"sim", {{"dt", -1.0}}}}), cli::ConfigError);
}

TEST_CASE("dotted overrides") {
  nlohmann::json doc = nlohmann::json::object();
  cli::apply_override(doc, "orca.time_horizon=3");
  cli::apply_override(doc, "robot.policy=straight_stop");
  cli::apply_override(doc, "eval.mixture={\"orca_fraction\": 0.2, \"static_fraction\": 0.1}");
  const cli::RunConfig cfg = cli::config_from_json(doc);
  CHECK(cfg.orca.time_horizon == 3.0);
  CHECK(cfg.robot.policy == "straight_stop");
  REQUIRE(cfg.eval.mixture.has_value());
  CHECK(*cfg.eval.mixture == CrowdMixture{0.2, 0.1});
  CHECK_THROWS_AS(cli::apply_override(doc, "no_equals_sign"), cli::ConfigError);
}

TEST_CASE("config file, overrides and environment seed") {
  const fs::path dir = workdir("precedence");
  write_file_atomic(dir / "run.json", R"({"seed": 3, "orca": {"time_horizon": 4}})");
  cli::RunConfig cfg = cli::load_config(dir / "run.json", {"orca.time_horizon=6"});
  CHECK(cfg.seed == 3);
  CHECK(cfg.orca.time_horizon == 6.0);

  ::setenv("CROWDSIM_SEED", "42", 1);
  cfg = cli::load_config(dir / "run.json", {"seed=5"});
  CHECK(cfg.seed == 42);
  ::setenv("CROWDSIM_SEED", "forty-two", 1);
  CHECK_THROWS_AS(cli::load_config(std::nullopt, {}), cli::ConfigError);
  ::unsetenv("CROWDSIM_SEED");
}

TEST_CASE("environment lists") {
  CHECK(cli::parse_env_list("diverse4") ==
        std::vector<PresetName>(kDiverse4.begin(), kDiverse4.end()));
  CHECK(cli::parse_env_list("simple-circle,DenseSquare") ==
        std::vector<PresetName>{PresetName::SimpleCircle, PresetName::DenseSquare});
  CHECK(cli::default_eval_mixture({PresetName::SimpleCircle}) == CrowdMixture{1.0, 0.0});
  CHECK(cli::default_eval_mixture({PresetName::LargeCircle}) == CrowdMixture{0.5, 0.0});
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"fly"}).code == cli::kExitUsage);
  CHECK(invoke({"eval", "--episodes", "many"}).code == cli::kExitUsage);
  CHECK(invoke({"eval", "--help"}).code == cli::kExitOk);
  const Invocation r = invoke({"train", "--preset", "XL", "--episodes", "4"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("unknown schedule preset") != std::string::npos);
  CHECK(invoke({"eval", "--policy", "value", "--envs", "simple-circle", "--episodes", "1"}).code ==
        cli::kExitUsage);
}

TEST_CASE("runtime failures exit 1") {
  const fs::path dir = workdir("runtime");
  CHECK(invoke({"replay", (dir / "missing.jsonl").string(), "--svg", dir.string()}).code ==
        cli::kExitFailure);
}

TEST_CASE("train writes a network and a reproducible log") {
  const fs::path dir = workdir("train");
  std::vector<std::string> args{"train", "--preset", "CD", "--seed", "1", "--episodes", "12",
                                "--set", "paths.output_dir=" + dir.string()};
  args.insert(args.end(), kSmallTraining.begin(), kSmallTraining.end());
  REQUIRE(invoke(args).code == cli::kExitOk);
  const std::string log = read_file(dir / "train_log.csv");
  CHECK(line_count(log) == 13);
  CHECK(lines(log).front() == "episode,phase,outcome,return,loss,epsilon");
  const ValueNet net = load_net(dir / "net.json");
  CHECK(net.widths() == std::vector<std::size_t>{kFeatureSize, 16, 1});

  std::vector<std::string> again = args;
  again.push_back("--log");
  again.push_back((dir / "again.csv").string());
  again.push_back("--net");
  again.push_back((dir / "again.json").string());
  REQUIRE(invoke(again).code == cli::kExitOk);
  CHECK(read_file(dir / "again.csv") == log);
  CHECK(read_file(dir / "again.json") == read_file(dir / "net.json"));
}

TEST_CASE("eval reports environments and a pooled row") {
  const fs::path dir = workdir("eval");
  const Invocation r = invoke({"eval", "--policy", "orca", "--envs", "diverse4", "--episodes", "3",
                               "--seed", "9", "--out", dir.string(), "--threads", "2"});
  REQUIRE(r.code == cli::kExitOk);
  const std::vector<std::string> rows = lines(read_file(dir / "eval.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == report_csv_header());
  CHECK(rows[1].rfind("orca,-,LargeCircle,", 0) == 0);
  CHECK(rows[4].rfind("orca,-,DenseSquare,", 0) == 0);
  CHECK(rows[5].rfind("orca,-,pooled,", 0) == 0);
  CHECK(rows[5].substr(rows[5].rfind(',') + 1) == "12");
  CHECK(r.out == read_file(dir / "eval.csv"));

  const std::vector<std::string> episodes = lines(read_file(dir / "episodes.jsonl"));
  REQUIRE(episodes.size() == 12);
  const nlohmann::json first = nlohmann::json::parse(episodes.front());
  CHECK(first.at("env") == "LargeCircle");
  CHECK(first.at("episode") == 0);
  CHECK(first.contains("min_distance"));
}

TEST_CASE("eval is byte-reproducible") {
  const fs::path a = workdir("eval_a"), b = workdir("eval_b");
  for (const fs::path& dir : {a, b}) {
    REQUIRE(invoke({"eval", "--policy", "straight_stop", "--envs", "simple-square,dense-circle",
                    "--episodes", "4", "--seed", "2", "--out", dir.string()})
                .code == cli::kExitOk);
  }
  CHECK(read_file(a / "eval.csv") == read_file(b / "eval.csv"));
  CHECK(read_file(a / "episodes.jsonl") == read_file(b / "episodes.jsonl"));
}

TEST_CASE("replay renders requested frames") {
  const fs::path dir = workdir("replay");
  EvalSettings settings;
  settings.time_limit = 1.0;
  const EpisodeRecord rec =
      run_seeded_episode(PresetName::SimpleCircle, 4, StaticPolicy{}, settings);
  REQUIRE(rec.frames.size() == 5);
  write_file_atomic(dir / "short.jsonl", trajectory_jsonl(rec));

  const Invocation ok = invoke({"replay", (dir / "short.jsonl").string(), "--svg",
                                (dir / "svg").string(), "--frame", "0", "--frame", "4"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(fs::exists(dir / "svg" / "frame_0000.svg"));
  CHECK(fs::exists(dir / "svg" / "frame_0004.svg"));
  CHECK_FALSE(fs::exists(dir / "svg" / "frame_0001.svg"));

  const Invocation bad = invoke({"replay", (dir / "short.jsonl").string(), "--svg",
                                 (dir / "svg").string(), "--frame", "9"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("out of range") != std::string::npos);

  CHECK(invoke({"replay", (dir / "short.jsonl").string(), "--svg", (dir / "all").string()}).code ==
        cli::kExitOk);
  CHECK(std::distance(fs::directory_iterator(dir / "all"), fs::directory_iterator{}) == 5);
}

TEST_CASE("valuemap enumerates the action set") {
  const fs::path dir = workdir("valuemap");
  REQUIRE(invoke({"eval", "--policy", "orca", "--envs", "simple-circle", "--episodes", "1", "--out",
                  dir.string(), "--trajectories"})
              .code == cli::kExitOk);
  const fs::path traj = dir / "trajectories" / "SimpleCircle_0000.jsonl";
  REQUIRE(fs::exists(traj));
  const EpisodeRecord rec = load_trajectory(traj);
  REQUIRE(rec.outcome.kind == OutcomeKind::Success);

  Rng rng(1);
  const auto net = std::make_shared<ValueNet>(ValueNet::random({kFeatureSize, 32, 1}, rng));
  save_net(dir / "net.json", *net);

  const std::size_t frame = rec.frames.size() / 3;
  const Invocation r = invoke({"valuemap", "--net", (dir / "net.json").string(), "--trajectory",
                               traj.string(), "--frame", std::to_string(frame)});
  REQUIRE(r.code == cli::kExitOk);
  const std::vector<std::string> rows = lines(r.out);
  REQUIRE(rows.size() == 82);
  CHECK(rows[0] == "speed,direction,value");
  CHECK(rows[1].rfind("0,0,", 0) == 0);

  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double v = std::stod(rows[k].substr(rows[k].rfind(',') + 1));
    if (v > best_value) {
      best_value = v;
      best = k - 1;
    }
  }
  const ValuePolicy policy(net, RewardParams{}, 0.25);
  const ActionSet set = build_action_set(1.0, 16);
  CHECK(policy.greedy(observation_from_frame(rec.frames[frame])) == set.actions[best]);

  const Invocation terminal =
      invoke({"valuemap", "--net", (dir / "net.json").string(), "--trajectory", traj.string(),
              "--frame", std::to_string(rec.frames.size() - 1)});
  REQUIRE(terminal.code == cli::kExitOk);
  const std::vector<std::string> trows = lines(terminal.out);
  CHECK(trows[1] == "0,0,1");

  CHECK(invoke({"valuemap", "--net", (dir / "net.json").string(), "--trajectory", traj.string(),
                "--frame", "100000"})
            .code == cli::kExitUsage);
}

TEST_CASE("gen-scenario is seeded") {
  const Invocation a = invoke({"gen-scenario", "--preset", "dense-square", "--seed", "8"});
  const Invocation b = invoke({"gen-scenario", "--preset", "DenseSquare", "--seed", "8"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  const ScenarioSpec spec = nlohmann::json::parse(a.out).get<ScenarioSpec>();
  CHECK(spec.seed == 8);
  CHECK(spec.preset.name == PresetName::DenseSquare);
  CHECK(static_cast<int>(spec.humans.size()) == preset(PresetName::DenseSquare).n);

  ::setenv("CROWDSIM_SEED", "8", 1);
  const Invocation env = invoke({"gen-scenario", "--preset", "dense-square"});
  const Invocation flag = invoke({"gen-scenario", "--preset", "dense-square", "--seed", "1"});
  ::unsetenv("CROWDSIM_SEED");
  CHECK(env.out == a.out);
  CHECK(flag.out != a.out);
  CHECK(nlohmann::json::parse(flag.out).at("seed") == 1);

  CHECK(invoke({"gen-scenario", "--preset", "huge-circle"}).code == cli::kExitUsage);
  CHECK(invoke({"gen-scenario", "--static-fraction", "2"}).code == cli::kExitUsage);
}
