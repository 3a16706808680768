#include "crowdnav/geometry.hpp"

#include <algorithm>

#include "crowdnav/error.hpp"

namespace crowdnav {

Vec2 unit_displacement(Vec2 p_i, Vec2 p_j) {
  const Vec2 d = p_i - p_j;
  const double n = d.norm();
  if (!(n >= kCoincidenceThreshold)) {
    throw CoincidentPoints();
  }
  return d / n;
}

double min_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  // Work in the frame of b: relative offset moves linearly from d0 to d1.
  const Vec2 d0 = a0 - b0;
  const Vec2 d1 = a1 - b1;
  const Vec2 delta = d1 - d0;
  const double len_sq = delta.norm_sq();
  double s = 0.0;
  if (len_sq > 0.0) {
    s = std::clamp(-dot(d0, delta) / len_sq, 0.0, 1.0);
  }
  return (d0 + delta * s).norm();
}

Vec2 closest_point_on_segment(Vec2 p, Vec2 s0, Vec2 s1) {
  const Vec2 seg = s1 - s0;
  const double len_sq = seg.norm_sq();
  if (len_sq == 0.0) {
    return s0;
  }
  const double t = std::clamp(dot(p - s0, seg) / len_sq, 0.0, 1.0);
  return s0 + seg * t;
}

}  // namespace crowdnav
