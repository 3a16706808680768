#include "crowdnav/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "crowdnav/error.hpp"

namespace crowdnav {

namespace {

MeanStd mean_std(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(xs.size()))};
}

std::string fmt_opt(const std::optional<MeanStd>& v, bool std_part) {
  if (!v) return "";
  return fmt::format("{:.4f}", std_part ? v->std : v->mean);
}

}  // namespace

EpisodeMetrics episode_metrics(const EpisodeRecord& rec, const SimConfig& cfg) {
  if (rec.frames.empty()) throw EmptyInput("episode record has no frames");
  EpisodeMetrics m;
  m.outcome = rec.outcome;
  if (rec.outcome.kind == OutcomeKind::Success) {
    m.time_to_goal = rec.outcome.time_elapsed;
  }
  m.total_steps = rec.frames.size() - 1;

  double closest = std::numeric_limits<double>::infinity();
  bool any_humans = false;
  for (std::size_t f = 0; f < rec.frames.size(); ++f) {
    const std::vector<AgentState>& agents = rec.frames[f].agents;
    if (agents.empty()) throw FormatError("frame without robot");
    const AgentState& robot = agents.front();
    double frame_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < agents.size(); ++k) {
      any_humans = true;
      frame_min = std::min(frame_min, distance(robot.position, agents[k].position) -
                                          robot.radius - agents[k].radius);
    }
    closest = std::min(closest, frame_min);
    if (f > 0 && frame_min < cfg.discomfort_dist) {
      ++m.discomfort_steps;
    }
  }
  if (any_humans) {
    m.min_distance = rec.outcome.kind == OutcomeKind::Collision ? 0.0 : std::max(0.0, closest);
  }
  return m;
}

AggregateReport aggregate(std::span<const EpisodeMetrics> ms) {
  if (ms.empty()) throw EmptyInput("cannot aggregate an empty episode list");
  AggregateReport r;
  r.episode_count = ms.size();
  std::size_t success = 0, collision = 0, timeout = 0, discomfort = 0, steps = 0;
  std::vector<double> times, dts;
  for (const EpisodeMetrics& m : ms) {
    switch (m.outcome.kind) {
      case OutcomeKind::Success:
        ++success;
        times.push_back(m.time_to_goal.value_or(m.outcome.time_elapsed));
        break;
      case OutcomeKind::Collision:
        ++collision;
        break;
      case OutcomeKind::Timeout:
        ++timeout;
        break;
    }
    discomfort += m.discomfort_steps;
    steps += m.total_steps;
    if (m.min_distance) dts.push_back(*m.min_distance);
  }
  const double n = static_cast<double>(ms.size());
  r.success_rate = static_cast<double>(success) / n;
  r.collision_rate = static_cast<double>(collision) / n;
  r.timeout_rate = static_cast<double>(timeout) / n;
  r.discomfort_rate = steps > 0 ? static_cast<double>(discomfort) / static_cast<double>(steps) : 0.0;
  if (!times.empty()) r.time = mean_std(times);
  if (!dts.empty()) r.d_T = mean_std(dts);
  return r;
}

std::uint64_t eval_episode_seed(std::uint64_t base, PresetName env, std::size_t index) {
  return episode_seed(base, 10 + static_cast<std::uint64_t>(env), index);
}

EpisodeRecord run_seeded_episode(PresetName env, std::uint64_t seed, const Policy& robot_policy,
                                 const EvalSettings& settings) {
  SimConfig sim = settings.sim;
  sim.time_limit = settings.time_limit.value_or(default_time_limit(env));
  Rng rng(seed);
  ScenarioSpec spec = generate_scenario(preset(env), rng, settings.robot);
  spec.seed = seed;
  spec = assign_policies(std::move(spec), settings.mixture, rng);
  return run_episode(spec, robot_policy, sim, rng, settings.models);
}

EvaluationResult evaluate(const Policy& robot_policy, std::span<const PresetName> envs,
                          const EvalSettings& settings) {
  if (settings.episodes_per_env == 0) throw Error("eval.episodes_per_env must be >= 1");
  settings.mixture.validate();

  const std::size_t per_env = settings.episodes_per_env;
  const std::size_t total = envs.size() * per_env;

  EvaluationResult result;
  result.envs.resize(envs.size());
  for (std::size_t k = 0; k < envs.size(); ++k) {
    result.envs[k].env = envs[k];
    result.envs[k].episodes.resize(per_env);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t k = job / per_env;
      const std::size_t i = job % per_env;
      try {
        const std::uint64_t seed = eval_episode_seed(settings.seed, envs[k], i);
        SimConfig sim = settings.sim;
        sim.time_limit = settings.time_limit.value_or(default_time_limit(envs[k]));
        EpisodeRecord rec = run_seeded_episode(envs[k], seed, robot_policy, settings);
        EpisodeResult& slot = result.envs[k].episodes[i];
        slot.seed = seed;
        slot.metrics = episode_metrics(rec, sim);
        if (settings.keep_records) slot.record = std::move(rec);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };

  std::size_t threads = settings.threads != 0 ? settings.threads
                                              : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EpisodeMetrics> pooled;
  pooled.reserve(total);
  for (EnvEvaluation& ev : result.envs) {
    std::vector<EpisodeMetrics> ms;
    ms.reserve(per_env);
    for (const EpisodeResult& e : ev.episodes) ms.push_back(e.metrics);
    ev.report = aggregate(ms);
    pooled.insert(pooled.end(), ms.begin(), ms.end());
  }
  result.pooled = aggregate(pooled);
  return result;
}

EvaluationResult diverse4_eval(const Policy& robot_policy, const EvalSettings& settings) {
  return evaluate(robot_policy, kDiverse4, settings);
}

std::string report_csv_header() {
  return "policy,training,env,success,collision,timeout,time_mean,time_std,discomfort,dT_mean,"
         "dT_std,n";
}

std::string report_csv_row(std::string_view policy, std::string_view training,
                           std::string_view env, const AggregateReport& r) {
  return fmt::format("{},{},{},{:.4f},{:.4f},{:.4f},{},{},{:.4f},{},{},{}", policy, training, env,
                     r.success_rate, r.collision_rate, r.timeout_rate, fmt_opt(r.time, false),
                     fmt_opt(r.time, true), r.discomfort_rate, fmt_opt(r.d_T, false),
                     fmt_opt(r.d_T, true), r.episode_count);
}

}  // namespace crowdnav
