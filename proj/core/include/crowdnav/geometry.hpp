#pragma once

#include <cmath>

namespace crowdnav {

/// Below this separation two points are treated as the same point.
inline constexpr double kCoincidenceThreshold = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  constexpr double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3-D cross product; positive when b is counter-clockwise of a.
constexpr double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Counter-clockwise rotation by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Scales `v` down to `max_norm` if it is longer; never scales up.
inline Vec2 clamp_norm(Vec2 v, double max_norm) {
  const double n = v.norm();
  if (n > max_norm && n > 0.0) {
    return v * (max_norm / n);
  }
  return v;
}

/// (p_i - p_j) / |p_i - p_j|. Throws CoincidentPoints below kCoincidenceThreshold.
Vec2 unit_displacement(Vec2 p_i, Vec2 p_j);

/// Minimum separation of two points moving linearly and simultaneously from
/// a0 to a1 and b0 to b1 over the same unit interval.
double min_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

/// Closest point to `p` on the segment [s0, s1].
Vec2 closest_point_on_segment(Vec2 p, Vec2 s0, Vec2 s1);

}  // namespace crowdnav
