#include "crowdnav/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace crowdnav {

namespace {

struct Box {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(Vec2 p, double r = 0.0) {
    min_x = std::min(min_x, p.x - r);
    min_y = std::min(min_y, p.y - r);
    max_x = std::max(max_x, p.x + r);
    max_y = std::max(max_y, p.y + r);
  }
};

std::string star(Vec2 c, double outer, double inner) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    const double a = std::numbers::pi / 2.0 + k * std::numbers::pi / 5.0;
    const double r = (k % 2 == 0) ? outer : inner;
    pts += fmt::format("{}{:.2f},{:.2f}", k == 0 ? "" : " ", c.x + r * std::cos(a),
                       c.y - r * std::sin(a));
  }
  return pts;
}

}  // namespace

std::string render_frame_svg(const EpisodeRecord& rec, std::size_t frame, const SvgStyle& style) {
  if (frame >= rec.frames.size()) {
    throw std::out_of_range("frame " + std::to_string(frame) + " out of range (record has " +
                            std::to_string(rec.frames.size()) + " frames)");
  }
  Box box;
  for (const Frame& f : rec.frames) {
    for (const AgentState& a : f.agents) box.add(a.position, a.radius);
  }
  box.add(rec.scenario.robot_goal);
  for (const HumanSpec& h : rec.scenario.humans) box.add(h.goal);

  const double s = style.pixels_per_metre;
  const double x0 = box.min_x - style.margin;
  const double y1 = box.max_y + style.margin;
  const double width = (box.max_x - box.min_x + 2.0 * style.margin) * s;
  const double height = (box.max_y - box.min_y + 2.0 * style.margin) * s;
  // World y points up, SVG y points down.
  auto px = [&](Vec2 p) { return Vec2{(p.x - x0) * s, (y1 - p.y) * s}; };

  const Frame& f = rec.frames[frame];
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.2f}\" height=\"{:.2f}\" "
      "viewBox=\"0 0 {:.2f} {:.2f}\">\n",
      width, height, width, height);
  out += fmt::format("<rect width=\"100%\" height=\"100%\" fill=\"#3a3a3a\"/>\n");
  out += fmt::format("<text x=\"8\" y=\"20\" fill=\"white\" font-size=\"14\">t = {:.2f} s</text>\n",
                     f.t);

  for (std::size_t k = 0; k < rec.scenario.humans.size(); ++k) {
    out += fmt::format("<polygon class=\"goal\" points=\"{}\" fill=\"#9e9e9e\"/>\n",
                       star(px(rec.scenario.humans[k].goal), 0.15 * s, 0.06 * s));
  }
  out += fmt::format("<polygon class=\"goal robot-goal\" points=\"{}\" fill=\"#e53935\"/>\n",
                     star(px(rec.scenario.robot_goal), 0.25 * s, 0.1 * s));

  for (std::size_t k = 1; k < f.agents.size(); ++k) {
    const AgentState& a = f.agents[k];
    const Vec2 c = px(a.position);
    out += fmt::format(
        "<circle class=\"human\" id=\"agent-{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.4f}\" "
        "fill=\"white\" stroke=\"black\"/>\n",
        k, c.x, c.y, a.radius * s);
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"{:.1f}\" text-anchor=\"middle\" "
        "dominant-baseline=\"central\">{}</text>\n",
        c.x, c.y, 0.35 * s, k);
  }
  const AgentState& robot = f.agents.front();
  const Vec2 rc = px(robot.position);
  out += fmt::format(
      "<circle class=\"robot\" id=\"agent-0\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.4f}\" "
      "fill=\"#fdd835\" stroke=\"black\" stroke-width=\"2\"/>\n",
      rc.x, rc.y, robot.radius * s);
  out += "</svg>\n";
  return out;
}

}  // namespace crowdnav
