#pragma once

#include <cstddef>
#include <string>

#include "crowdnav/engine.hpp"

namespace crowdnav {

struct SvgStyle {
  double pixels_per_metre = 40.0;
  double margin = 1.0;  ///< metres around the bounding box of the whole record
};

/// Top-down scene of one frame: humans as white numbered circles, the robot
/// in yellow, goals as stars. Circle radii are recorded radii times the
/// scale. Throws std::out_of_range for a bad frame index.
std::string render_frame_svg(const EpisodeRecord& rec, std::size_t frame, const SvgStyle& style = {});

}  // namespace crowdnav
