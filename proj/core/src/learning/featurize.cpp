#include "crowdnav/learning/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace crowdnav {

std::vector<double> featurize(const Observation& obs) {
  const AgentState& robot = obs.robot;
  const Vec2 to_goal = robot.goal - robot.position;
  const double d_goal = to_goal.norm();
  const double angle = d_goal > 0.0 ? std::atan2(to_goal.y, to_goal.x) : 0.0;

  std::vector<double> f(kFeatureSize, 0.0);
  const Vec2 v = rotate(robot.velocity, -angle);
  f[0] = d_goal;
  f[1] = robot.v_pref;
  f[2] = robot.radius;
  f[3] = v.x;
  f[4] = v.y;

  struct Rel {
    double surface;
    Vec2 pos;
    Vec2 vel;
    double radius;
  };
  std::vector<Rel> rel;
  rel.reserve(obs.humans.size());
  for (const ObservableState& h : obs.humans) {
    const Vec2 dp = h.position - robot.position;
    rel.push_back({dp.norm() - h.radius - robot.radius, rotate(dp, -angle),
                   rotate(h.velocity - robot.velocity, -angle), h.radius});
  }
  std::sort(rel.begin(), rel.end(), [](const Rel& a, const Rel& b) {
    return std::tie(a.surface, a.radius) < std::tie(b.surface, b.radius);
  });

  const std::size_t used = std::min(rel.size(), kHumanSlots);
  for (std::size_t k = 0; k < used; ++k) {
    double* slot = f.data() + kRobotFeatures + k * kHumanFeatures;
    const Rel& h = rel[k];
    slot[0] = h.pos.x;
    slot[1] = h.pos.y;
    slot[2] = h.vel.x;
    slot[3] = h.vel.y;
    slot[4] = h.radius;
    slot[5] = h.radius + robot.radius;
    slot[6] = h.surface;
    slot[7] = 1.0;
  }
  return f;
}

}  // namespace crowdnav
