#pragma once

#include "gco/costmap.hpp"
#include "gco/geometry.hpp"

namespace gco {

struct PrimitiveConfig {
    double length = 0.05;  // meters per move edge
    int headings = 8;      // compass headings at 360/headings degrees
};

// Candidate edges for one robot at `config`, best first:
//  - one move edge per heading, pruned when its swept disk touches an obstacle,
//  - a dock edge straight onto the goal when the goal is under one primitive away,
//  - a trailing wait edge (always last, never pruned).
// Move/dock edges are sorted ascending by the distance-field value at their
// endpoints; ties break by heading index so replays are stable.
std::vector<MotionEdge> generate_motion_edges(int robot, Vec2 config, const DistanceField& field,
                                              const GridMap& map,
                                              const PrimitiveConfig& cfg = {});

}  // namespace gco
