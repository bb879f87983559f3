#pragma once

#include <string>
#include <vector>

#include "gco/scenario.hpp"

namespace gco {

// Static figure of one run: obstacles, start/goal markers, per-robot
// trajectory polylines, object footprints when present. Output formatting is
// fixed-precision so identical inputs render byte-identical files.
std::string render_svg(const Scenario& scenario,
                       const std::vector<std::vector<Vec2>>& trajectories);

// Time-slider variant: trajectories truncated after `upto` steps, with robot
// disks drawn at their positions at that step.
std::string render_svg_frame(const Scenario& scenario,
                             const std::vector<std::vector<Vec2>>& trajectories, size_t upto);

}  // namespace gco
