#include "crowdnav/learning/imitation.hpp"

#include <algorithm>
#include <numeric>

#include "crowdnav/error.hpp"
#include "crowdnav/learning/featurize.hpp"

namespace crowdnav {

Observation observation_from_frame(const Frame& frame) {
  if (frame.agents.empty()) throw FormatError("frame has no agents");
  Observation obs;
  obs.t = frame.t;
  obs.robot = frame.agents.front();
  obs.humans.reserve(frame.agents.size() - 1);
  for (std::size_t k = 1; k < frame.agents.size(); ++k) {
    const AgentState& h = frame.agents[k];
    obs.humans.push_back({h.position, h.velocity, h.radius});
  }
  return obs;
}

std::vector<Experience> demo_experiences(const EpisodeRecord& demo, const RewardParams& p) {
  const std::size_t n = demo.frames.size();
  if (n < 2) return {};

  std::vector<Observation> obs;
  obs.reserve(n);
  for (const Frame& f : demo.frames) {
    obs.push_back(observation_from_frame(f));
  }

  std::vector<Experience> out(n - 1);
  double to_go = 0.0;
  for (std::size_t k = n - 1; k-- > 0;) {
    const double dt = obs[k + 1].t - obs[k].t;
    const double r = reward(obs[k], Action{obs[k + 1].robot.velocity}, obs[k + 1], dt, p);
    to_go = r + step_discount(p, dt, obs[k].robot.v_pref) * to_go;
    out[k] = {featurize(obs[k]), to_go};
  }
  return out;
}

ImitationResult il_warmstart(ValueNet net, std::span<const EpisodeRecord> demos,
                             const RewardParams& p, const ImitationConfig& cfg) {
  std::vector<Experience> samples;
  for (const EpisodeRecord& d : demos) {
    std::vector<Experience> e = demo_experiences(d, p);
    samples.insert(samples.end(), std::make_move_iterator(e.begin()),
                   std::make_move_iterator(e.end()));
  }
  if (samples.empty()) {
    throw EmptyInput("imitation warm start needs at least one demonstration step");
  }

  ImitationResult result;
  result.sample_count = samples.size();
  result.initial_loss = mean_squared_error(net, samples);

  Rng rng(cfg.seed);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
  std::vector<const Experience*> mini;
  mini.reserve(batch);

  for (std::size_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
    // Fisher-Yates with the toolkit's portable stream.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.index(i)]);
    }
    for (std::size_t start = 0; start < order.size(); start += batch) {
      mini.clear();
      const std::size_t stop = std::min(order.size(), start + batch);
      for (std::size_t i = start; i < stop; ++i) {
        mini.push_back(&samples[order[i]]);
      }
      gradient_step(net, mini, cfg.learning_rate);
    }
    result.sweep_losses.push_back(mean_squared_error(net, samples));
  }
  result.net = std::move(net);
  return result;
}

}  // namespace crowdnav
