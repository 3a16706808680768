#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crowdnav/engine.hpp"
#include "crowdnav/environments.hpp"

namespace crowdnav {

/// Episodes [begin, end) train in `env` with crowds drawn from `mixture`.
struct TrainingPhase {
  std::size_t begin = 0;
  std::size_t end = 0;
  PresetName env = PresetName::SimpleCircle;
  CrowdMixture mixture;
};

struct TrainingSchedule {
  std::string name;
  std::vector<TrainingPhase> phases;
  std::size_t total_episodes = 10'000;
  double epsilon_start = 0.5;
  double epsilon_end = 0.1;
  std::size_t epsilon_decay_episodes = 4'000;
  std::size_t il_episodes = 300;

  /// Throws crowdnav::Error unless the phases partition [0, total_episodes).
  void validate() const;

  std::size_t phase_index(std::size_t episode) const;
  const TrainingPhase& phase_for(std::size_t episode) const { return phases[phase_index(episode)]; }

  /// Linear decay from epsilon_start, equal to epsilon_end from
  /// epsilon_decay_episodes onwards.
  double epsilon_at(std::size_t episode) const;
};

inline constexpr double kDefaultCurriculumStaticFraction = 0.3;

/// The four training regimes: "BL" (baseline), "D" (diverse), "C"
/// (curriculum) and "CD" (curriculum + diverse). Curriculum regimes switch
/// from the simple circle to the simple square half way through, where a
/// `static_fraction` share of humans stands still. The exploration decay is
/// scaled with `total_episodes`. Throws UnknownPreset.
TrainingSchedule schedule_preset(std::string_view name, std::size_t total_episodes = 10'000,
                                 double static_fraction = kDefaultCurriculumStaticFraction);

}  // namespace crowdnav
