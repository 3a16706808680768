#include "crowdnav/learning/value_policy.hpp"

#include "crowdnav/error.hpp"
#include "crowdnav/learning/featurize.hpp"

namespace crowdnav {

Observation propagate(const Observation& obs, const Action& action, double dt) {
  Observation next = obs;
  next.t = obs.t + dt;
  next.robot.velocity = action.velocity;
  next.robot.position = obs.robot.position + action.velocity * dt;
  for (ObservableState& h : next.humans) {
    h.position = h.position + h.velocity * dt;
  }
  return next;
}

double lookahead_value(const ValueNet& net, const Observation& obs, const Action& action, double dt,
                       const RewardParams& p) {
  const Observation next = propagate(obs, action, dt);
  const TransitionAssessment t = assess_transition(obs, next);
  const double r = reward(t, dt, p);
  if (t.terminal()) {
    return r;
  }
  return r + step_discount(p, dt, obs.robot.v_pref) * value_forward(net, featurize(next));
}

std::vector<double> lookahead_values(const ValueNet& net, const Observation& obs,
                                     const ActionSet& set, double dt, const RewardParams& p) {
  std::vector<double> out;
  out.reserve(set.size());
  for (const Action& a : set.actions) {
    out.push_back(lookahead_value(net, obs, a, dt, p));
  }
  return out;
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("argmax of an empty range");
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

ValuePolicy::ValuePolicy(std::shared_ptr<const ValueNet> net, RewardParams reward, double dt,
                         std::size_t n_directions, double epsilon)
    : net_(std::move(net)),
      reward_(reward),
      dt_(dt),
      n_directions_(n_directions),
      epsilon_(epsilon) {
  if (!net_) throw Error("value policy needs a network");
  if (net_->input_size() != kFeatureSize) {
    throw ShapeMismatch("value network input width must be " + std::to_string(kFeatureSize));
  }
}

Action ValuePolicy::greedy(const Observation& obs) const {
  const ActionSet set = build_action_set(obs.robot.v_pref, n_directions_);
  const std::vector<double> values = lookahead_values(*net_, obs, set, dt_, reward_);
  return set.actions[argmax(values)];
}

Action ValuePolicy::act(const Observation& obs, Rng& rng) const {
  if (epsilon_ > 0.0 && rng.bernoulli(epsilon_)) {
    const ActionSet set = build_action_set(obs.robot.v_pref, n_directions_);
    return set.actions[rng.index(set.size())];
  }
  return greedy(obs);
}

}  // namespace crowdnav
