#include "crowdnav/orca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "crowdnav/error.hpp"

namespace crowdnav {

namespace {

constexpr double kLpEpsilon = 1e-9;

Vec2 normalize(Vec2 v) { return v / v.norm(); }

// One-dimensional program along constraint `line_no`, bounded by the disc
// and every earlier constraint. Returns false if the line is infeasible.
bool solve_lp1(std::span<const HalfPlane> lines, std::size_t line_no, double radius, Vec2 opt,
               bool direction_opt, Vec2& result) {
  const HalfPlane& line = lines[line_no];
  const double dot_product = dot(line.point, line.direction);
  const double discriminant = dot_product * dot_product + radius * radius - line.point.norm_sq();

  if (discriminant < 0.0) {
    // Speed disc misses the line entirely.
    return false;
  }

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < line_no; ++i) {
    const double denominator = det(line.direction, lines[i].direction);
    const double numerator = det(lines[i].direction, line.point - lines[i].point);

    if (std::fabs(denominator) <= kLpEpsilon) {
      // Parallel lines.
      if (numerator < 0.0) {
        return false;
      }
      continue;
    }

    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) {
      return false;
    }
  }

  if (direction_opt) {
    result = dot(opt, line.direction) > 0.0 ? line.point + line.direction * t_right
                                             : line.point + line.direction * t_left;
  } else {
    const double t = dot(line.direction, opt - line.point);
    result = line.point + line.direction * std::clamp(t, t_left, t_right);
  }
  return true;
}

std::size_t solve_lp2_impl(std::span<const HalfPlane> lines, double radius, Vec2 opt,
                           bool direction_opt, Vec2& result) {
  if (direction_opt) {
    // `opt` is a unit vector here.
    result = opt * radius;
  } else if (opt.norm_sq() > radius * radius) {
    result = normalize(opt) * radius;
  } else {
    result = opt;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].penetration(result) > 0.0) {
      const Vec2 previous = result;
      if (!solve_lp1(lines, i, radius, opt, direction_opt, result)) {
        result = previous;
        return i;
      }
    }
  }
  return lines.size();
}

}  // namespace

void OrcaConfig::validate() const {
  if (!(time_horizon > 0.0)) throw Error("orca.time_horizon must be > 0");
  if (!(neighbor_dist > 0.0)) throw Error("orca.neighbor_dist must be > 0");
  if (!(reciprocity_share > 0.0 && reciprocity_share <= 1.0)) {
    throw Error("orca.reciprocity_share must be in (0, 1]");
  }
  if (!(safety_margin >= 0.0)) throw Error("orca.safety_margin must be >= 0");
}

HalfPlane orca_halfplane(const AgentState& self, const AgentState& other, const OrcaConfig& cfg,
                         double dt) {
  const Vec2 rel_pos = other.position - self.position;
  const Vec2 rel_vel = self.velocity - other.velocity;
  const double dist_sq = rel_pos.norm_sq();
  const double combined_radius = self.radius + other.radius + 2.0 * cfg.safety_margin;
  const double combined_radius_sq = combined_radius * combined_radius;

  HalfPlane line;
  Vec2 u;

  if (dist_sq > combined_radius_sq) {
    // No collision yet: truncated cone over the time horizon.
    const double inv_horizon = 1.0 / cfg.time_horizon;
    const Vec2 w = rel_vel - rel_pos * inv_horizon;  // from cutoff centre to rel_vel
    const double w_len_sq = w.norm_sq();
    const double dot1 = dot(w, rel_pos);

    if (dot1 < 0.0 && dot1 * dot1 > combined_radius_sq * w_len_sq) {
      // Closest boundary point lies on the cutoff circle.
      const double w_len = std::sqrt(w_len_sq);
      const Vec2 unit_w = w / w_len;
      line.direction = {unit_w.y, -unit_w.x};
      u = unit_w * (combined_radius * inv_horizon - w_len);
    } else {
      // Closest boundary point lies on one of the legs.
      const double leg = std::sqrt(dist_sq - combined_radius_sq);
      if (det(rel_pos, w) > 0.0) {
        line.direction = Vec2{rel_pos.x * leg - rel_pos.y * combined_radius,
                              rel_pos.x * combined_radius + rel_pos.y * leg} /
                         dist_sq;
      } else {
        line.direction = -Vec2{rel_pos.x * leg + rel_pos.y * combined_radius,
                               -rel_pos.x * combined_radius + rel_pos.y * leg} /
                         dist_sq;
      }
      const double dot2 = dot(rel_vel, line.direction);
      u = line.direction * dot2 - rel_vel;
    }
  } else {
    // Already overlapping: demand separation within one step.
    const double inv_dt = 1.0 / dt;
    const Vec2 w = rel_vel - rel_pos * inv_dt;
    const double w_len = w.norm();
    Vec2 unit_w;
    if (w_len > kCoincidenceThreshold) {
      unit_w = w / w_len;
    } else {
      // Exactly co-located and co-moving: pick a fixed escape direction.
      unit_w = {1.0, 0.0};
    }
    line.direction = {unit_w.y, -unit_w.x};
    u = unit_w * (combined_radius * inv_dt - w_len);
  }

  line.point = self.velocity + u * cfg.reciprocity_share;
  return line;
}

Lp2Result solve_lp2(std::span<const HalfPlane> constraints, double max_speed, Vec2 preferred) {
  Lp2Result out;
  out.satisfied_count = solve_lp2_impl(constraints, max_speed, preferred, false, out.velocity);
  return out;
}

Vec2 solve_lp3(std::span<const HalfPlane> constraints, double max_speed, std::size_t start_index,
               Vec2 current) {
  Vec2 result = current;
  double worst = 0.0;

  for (std::size_t i = start_index; i < constraints.size(); ++i) {
    const HalfPlane& line_i = constraints[i];
    if (line_i.penetration(result) <= worst) {
      continue;
    }

    // Project every earlier constraint onto line i: the bisector of the two
    // lines bounds the region where i is the most violated.
    std::vector<HalfPlane> projected;
    projected.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
      const HalfPlane& line_j = constraints[j];
      HalfPlane line;
      const double determinant = det(line_i.direction, line_j.direction);

      if (std::fabs(determinant) <= kLpEpsilon) {
        if (dot(line_i.direction, line_j.direction) > 0.0) {
          continue;  // same direction, j never dominates i
        }
        line.point = (line_i.point + line_j.point) * 0.5;
      } else {
        line.point = line_i.point +
                     line_i.direction *
                         (det(line_j.direction, line_i.point - line_j.point) / determinant);
      }
      line.direction = normalize(line_j.direction - line_i.direction);
      projected.push_back(line);
    }

    const Vec2 previous = result;
    const Vec2 inward = {-line_i.direction.y, line_i.direction.x};
    if (solve_lp2_impl(projected, max_speed, inward, true, result) < projected.size()) {
      // Infeasible only through round-off; the previous result is already
      // inside the projected region.
      result = previous;
    }
    worst = line_i.penetration(result);
  }
  return result;
}

Vec2 preferred_velocity(const AgentState& self, double dt) {
  const Vec2 to_goal = self.goal - self.position;
  const double d = to_goal.norm();
  if (d < kCoincidenceThreshold) {
    return {};
  }
  const double speed = std::min(self.v_pref, d / dt);
  return to_goal / d * speed;
}

Action orca_velocity(const AgentState& self, std::span<const AgentState> neighbors,
                     const OrcaConfig& cfg, double dt) {
  return orca_velocity(self, neighbors, cfg, dt, preferred_velocity(self, dt));
}

Action orca_velocity(const AgentState& self, std::span<const AgentState> neighbors,
                     const OrcaConfig& cfg, double dt, Vec2 preferred) {
  std::vector<std::size_t> order;
  order.reserve(neighbors.size());
  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    if (distance(self.position, neighbors[k].position) < cfg.neighbor_dist) {
      order.push_back(k);
    }
  }
  auto key = [&](std::size_t k) {
    const Vec2 p = neighbors[k].position;
    return std::tuple{(p - self.position).norm_sq(), p.x, p.y};
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  if (order.size() > cfg.max_neighbors) {
    order.resize(cfg.max_neighbors);
  }

  std::vector<HalfPlane> lines;
  lines.reserve(order.size());
  for (std::size_t k : order) {
    lines.push_back(orca_halfplane(self, neighbors[k], cfg, dt));
  }

  const double max_speed = self.v_pref;
  Lp2Result lp = solve_lp2(lines, max_speed, preferred);
  Vec2 v = lp.velocity;
  if (lp.satisfied_count < lines.size()) {
    v = solve_lp3(lines, max_speed, lp.satisfied_count, v);
  }
  return {clamp_norm(v, max_speed)};
}

}  // namespace crowdnav
