#include "crowdnav/learning/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "crowdnav/error.hpp"

namespace crowdnav {

void TrainingSchedule::validate() const {
  if (phases.empty()) throw Error("schedule has no phases");
  if (total_episodes == 0) throw Error("schedule.total_episodes must be > 0");
  std::size_t expected = 0;
  for (const TrainingPhase& p : phases) {
    if (p.begin != expected || p.end <= p.begin) {
      throw Error("schedule phases must partition [0, total_episodes) in order");
    }
    p.mixture.validate();
    expected = p.end;
  }
  if (expected != total_episodes) {
    throw Error("schedule phases must end at total_episodes");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0 && epsilon_end >= 0.0 && epsilon_end <= 1.0)) {
    throw Error("schedule epsilons must be in [0, 1]");
  }
}

std::size_t TrainingSchedule::phase_index(std::size_t episode) const {
  for (std::size_t k = 0; k < phases.size(); ++k) {
    if (episode >= phases[k].begin && episode < phases[k].end) return k;
  }
  // Past the end: stay in the final phase.
  return phases.size() - 1;
}

double TrainingSchedule::epsilon_at(std::size_t episode) const {
  if (epsilon_decay_episodes == 0 || episode >= epsilon_decay_episodes) {
    return epsilon_end;
  }
  const double f = static_cast<double>(episode) / static_cast<double>(epsilon_decay_episodes);
  return std::lerp(epsilon_start, epsilon_end, f);
}

TrainingSchedule schedule_preset(std::string_view name, std::size_t total_episodes,
                                 double static_fraction) {
  if (total_episodes < 2) throw Error("schedule needs at least 2 episodes");
  TrainingSchedule s;
  s.name = std::string(name);
  s.total_episodes = total_episodes;
  s.epsilon_decay_episodes = total_episodes * 2 / 5;

  const std::size_t half = total_episodes / 2;
  const CrowdMixture orca_only{1.0, 0.0};
  if (name == "BL") {
    s.phases = {{0, total_episodes, PresetName::SimpleCircle, orca_only}};
  } else if (name == "D") {
    s.phases = {{0, total_episodes, PresetName::SimpleCircle, {0.5, 0.0}}};
  } else if (name == "C") {
    s.phases = {{0, half, PresetName::SimpleCircle, orca_only},
                {half, total_episodes, PresetName::SimpleSquare, {1.0, static_fraction}}};
  } else if (name == "CD") {
    s.phases = {{0, half, PresetName::SimpleCircle, orca_only},
                {half, total_episodes, PresetName::SimpleSquare, {0.5, static_fraction}}};
  } else {
    throw UnknownPreset("unknown schedule preset '" + std::string(name) + "'");
  }
  s.validate();
  return s;
}

}  // namespace crowdnav
