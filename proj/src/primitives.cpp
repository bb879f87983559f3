#include "gco/primitives.hpp"

#include <algorithm>
#include <cmath>

#include "gco/error.hpp"

namespace gco {

namespace {

bool edge_hits_obstacle(Vec2 from, Vec2 to, const GridMap& map) {
    for (const ConvexPolygon& poly : map.obstacles)
        if (segment_polygon_distance(from, to, poly) < map.inflation_radius) return true;
    return false;
}

}  // namespace

std::vector<MotionEdge> generate_motion_edges(int robot, Vec2 config, const DistanceField& field,
                                              const GridMap& map, const PrimitiveConfig& cfg) {
    if (map.occupied_at(config))
        throw ValidationError("invalid state: configuration inside an inflated obstacle cell");

    struct Candidate {
        MotionEdge edge;
        double score;
        int heading;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(cfg.headings + 1);

    for (int k = 0; k < cfg.headings; ++k) {
        const double angle = 2.0 * M_PI * k / cfg.headings;
        const Vec2 to = config + Vec2{std::cos(angle), std::sin(angle)} * cfg.length;
        if (!map.in_bounds(to) || map.occupied_at(to)) continue;
        if (edge_hits_obstacle(config, to, map)) continue;
        candidates.push_back({{robot, config, to, EdgeKind::Move}, field.dist(to), k});
    }

    // Straight-line proximity also qualifies: grid fields quantize near the
    // goal, and the swept check below already prunes docks through obstacles.
    if (field.dist(config) < cfg.length || distance(config, field.goal) < cfg.length) {
        const Vec2 to = field.goal;
        if (!edge_hits_obstacle(config, to, map))
            candidates.push_back({{robot, config, to, EdgeKind::Dock}, field.dist(to), -1});
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.heading < b.heading;
    });

    std::vector<MotionEdge> out;
    out.reserve(candidates.size() + 1);
    for (const Candidate& c : candidates) out.push_back(c.edge);
    out.push_back({robot, config, config, EdgeKind::Wait});
    return out;
}

}  // namespace gco
