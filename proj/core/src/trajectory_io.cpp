#include <fmt/format.h>

#include "crowdnav/error.hpp"
#include "crowdnav/serialization.hpp"

namespace crowdnav {

std::string trajectory_jsonl(const EpisodeRecord& rec) {
  std::string out = json{{"scenario", rec.scenario}}.dump();
  out += '\n';
  for (const Frame& f : rec.frames) {
    out += fmt::format("{{\"t\":{},\"agents\":[", format_real(f.t));
    for (std::size_t k = 0; k < f.agents.size(); ++k) {
      const AgentState& a = f.agents[k];
      out += fmt::format("{}{{\"id\":{},\"x\":{},\"y\":{},\"vx\":{},\"vy\":{},\"r\":{}}}",
                         k == 0 ? "" : ",", k, format_real(a.position.x),
                         format_real(a.position.y), format_real(a.velocity.x),
                         format_real(a.velocity.y), format_real(a.radius));
    }
    out += "]}\n";
  }
  out += fmt::format("{{\"outcome\":{{\"kind\":\"{}\",\"time\":{}}}}}\n", to_string(rec.outcome.kind),
                     format_real(rec.outcome.time_elapsed));
  return out;
}

EpisodeRecord parse_trajectory(std::string_view jsonl) {
  EpisodeRecord rec;
  bool have_header = false;
  bool have_footer = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (have_footer) throw FormatError("trajectory: content after the outcome line");

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError("trajectory line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      if (!have_header) {
        rec.scenario = j.at("scenario").get<ScenarioSpec>();
        have_header = true;
      } else if (j.contains("outcome")) {
        const json& o = j.at("outcome");
        rec.outcome.kind = outcome_from_string(o.at("kind").get<std::string>());
        rec.outcome.time_elapsed = o.at("time").get<double>();
        have_footer = true;
      } else {
        Frame f;
        f.t = j.at("t").get<double>();
        const json& agents = j.at("agents");
        if (agents.size() != rec.scenario.humans.size() + 1) {
          throw FormatError("trajectory line " + std::to_string(line_no) +
                            ": agent count disagrees with the scenario");
        }
        for (const json& a : agents) {
          const auto id = a.at("id").get<std::size_t>();
          if (id != f.agents.size()) throw FormatError("trajectory: agent ids out of order");
          AgentState s;
          s.position = {a.at("x").get<double>(), a.at("y").get<double>()};
          s.velocity = {a.at("vx").get<double>(), a.at("vy").get<double>()};
          s.radius = a.at("r").get<double>();
          if (id == 0) {
            s.goal = rec.scenario.robot_goal;
            s.v_pref = rec.scenario.robot.v_pref;
          } else {
            const HumanSpec& h = rec.scenario.humans[id - 1];
            s.goal = h.goal;
            s.v_pref = h.v_pref;
          }
          s.reached_goal = distance(s.position, s.goal) < s.radius;
          f.agents.push_back(s);
        }
        rec.frames.push_back(std::move(f));
      }
    } catch (const json::exception& e) {
      throw FormatError("trajectory line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw FormatError("trajectory: missing scenario header");
  if (!have_footer) throw FormatError("trajectory: missing outcome line");
  return rec;
}

EpisodeRecord load_trajectory(const std::filesystem::path& path) {
  return parse_trajectory(read_file(path));
}

}  // namespace crowdnav
