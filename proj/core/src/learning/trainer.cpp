#include "crowdnav/learning/trainer.hpp"

#include <memory>

#include "crowdnav/error.hpp"
#include "crowdnav/learning/featurize.hpp"
#include "crowdnav/learning/replay_buffer.hpp"
#include "crowdnav/learning/value_policy.hpp"
#include "crowdnav/policies.hpp"

namespace crowdnav {

namespace {

// Random streams used during training.
constexpr std::uint64_t kDemoStream = 0;
constexpr std::uint64_t kEpisodeStream = 1;
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kBatchStream = 3;

SimConfig sim_for(const TrainConfig& cfg, PresetName env) {
  SimConfig sim = cfg.sim;
  sim.time_limit = cfg.time_limit.value_or(default_time_limit(env));
  return sim;
}

}  // namespace

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error("replay buffer capacity must be > 0");
  items_.reserve(std::min<std::size_t>(capacity, 4096));
}

void ReplayBuffer::push(Experience e) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(e));
    return;
  }
  items_[head_] = std::move(e);
  head_ = (head_ + 1) % capacity_;
}

const Experience& ReplayBuffer::at(std::size_t i) const {
  return items_.at((head_ + i) % items_.size());
}

std::vector<const Experience*> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
  std::vector<const Experience*> out;
  if (items_.empty()) return out;
  const std::size_t count = std::min(n, items_.size());
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(&items_[rng.index(items_.size())]);
  }
  return out;
}

void TrainConfig::validate() const {
  reward.validate();
  sim.validate();
  models.orca.validate();
  models.social_force.validate();
  if (!(learning_rate > 0.0)) throw Error("learning.learning_rate must be > 0");
  if (batch_size == 0) throw Error("learning.batch_size must be > 0");
  if (replay_capacity == 0) throw Error("learning.replay_capacity must be > 0");
  for (std::size_t w : hidden_widths) {
    if (w == 0) throw Error("learning.hidden_widths entries must be > 0");
  }
}

std::vector<std::size_t> value_net_widths(const TrainConfig& cfg) {
  std::vector<std::size_t> widths{kFeatureSize};
  widths.insert(widths.end(), cfg.hidden_widths.begin(), cfg.hidden_widths.end());
  widths.push_back(1);
  return widths;
}

std::vector<EpisodeRecord> collect_demonstrations(const TrainingSchedule& schedule,
                                                  std::uint64_t seed, const TrainConfig& cfg) {
  const TrainingPhase& first = schedule.phases.front();
  const SimConfig sim = sim_for(cfg, first.env);
  const OrcaPolicy expert(cfg.models.orca, sim.dt);
  std::vector<EpisodeRecord> demos;
  demos.reserve(schedule.il_episodes);
  for (std::size_t i = 0; i < schedule.il_episodes; ++i) {
    const std::uint64_t s = episode_seed(seed, kDemoStream, i);
    Rng rng(s);
    ScenarioSpec spec = generate_scenario(preset(first.env), rng, cfg.robot);
    spec.seed = s;
    spec = assign_policies(std::move(spec), first.mixture, rng);
    demos.push_back(run_episode(spec, expert, sim, rng, cfg.models));
  }
  return demos;
}

TrainResult train(const TrainingSchedule& schedule, std::uint64_t seed, const TrainConfig& cfg) {
  schedule.validate();
  cfg.validate();

  TrainResult result;
  Rng init_rng(episode_seed(seed, kInitStream, 0));
  auto net = std::make_shared<ValueNet>(ValueNet::random(value_net_widths(cfg), init_rng));

  ReplayBuffer buffer(cfg.replay_capacity);
  if (schedule.il_episodes > 0) {
    const std::vector<EpisodeRecord> demos = collect_demonstrations(schedule, seed, cfg);
    ImitationConfig il = cfg.imitation;
    il.seed = episode_seed(seed, kInitStream, 1);
    ImitationResult fitted = il_warmstart(*net, demos, cfg.reward, il);
    *net = fitted.net;
    result.imitation = std::move(fitted);
    // Demonstrations stay in the buffer until evicted by interaction.
    for (const EpisodeRecord& d : demos) {
      for (Experience& e : demo_experiences(d, cfg.reward)) buffer.push(std::move(e));
    }
  }

  Rng batch_rng(episode_seed(seed, kBatchStream, 0));
  result.log.reserve(schedule.total_episodes);

  for (std::size_t e = 0; e < schedule.total_episodes; ++e) {
    const std::size_t phase_idx = schedule.phase_index(e);
    const TrainingPhase& phase = schedule.phases[phase_idx];
    const SimConfig sim = sim_for(cfg, phase.env);
    const double epsilon = schedule.epsilon_at(e);

    const std::uint64_t s = episode_seed(seed, kEpisodeStream, e);
    Rng rng(s);
    ScenarioSpec spec = generate_scenario(preset(phase.env), rng, cfg.robot);
    spec.seed = s;
    spec = assign_policies(std::move(spec), phase.mixture, rng);

    const ValuePolicy policy(net, cfg.reward, sim.dt, cfg.n_directions, epsilon);
    double ret = 0.0;
    double discount = 1.0;
    double loss_sum = 0.0;
    std::size_t updates = 0;

    auto learn = [&](const World& before, const StepResult& res) {
      const Observation prev = observe(before);
      const Observation next = observe(res.world);
      const TransitionAssessment t = assess_transition(prev, next);
      const double r = reward(t, sim.dt, cfg.reward);
      const double gamma_step = step_discount(cfg.reward, sim.dt, prev.robot.v_pref);
      ret += discount * r;
      discount *= gamma_step;

      Experience exp;
      exp.features = featurize(prev);
      exp.target = t.terminal() ? r : r + gamma_step * value_forward(*net, featurize(next));
      buffer.push(std::move(exp));

      const std::vector<const Experience*> batch = buffer.sample(cfg.batch_size, batch_rng);
      loss_sum += gradient_step(*net, batch, cfg.learning_rate);
      ++updates;
    };

    const EpisodeRecord rec = run_episode(spec, policy, sim, rng, cfg.models, learn);
    result.log.push_back({e, phase_idx, rec.outcome.kind, ret,
                          updates > 0 ? loss_sum / static_cast<double>(updates) : 0.0, epsilon});
  }

  if (!net->all_finite()) {
    throw Error("training diverged: non-finite network parameters");
  }
  result.net = *net;
  return result;
}

}  // namespace crowdnav
