#pragma once

#include <string>
#include <vector>

#include "gco/geometry.hpp"
#include "gco/observation.hpp"

namespace gco {

// Movable rigid body: a union of convex polygons in body frame plus a pose.
struct SimObject {
    int id = 0;
    std::vector<ConvexPolygon> body;
    Pose2 pose;

    Vec2 body_centroid() const;
    Vec2 world_centroid() const { return pose.apply(body_centroid()); }
    double circumradius() const;  // about the body centroid
    std::vector<ConvexPolygon> world_polygons() const;
};

struct WorldState {
    std::vector<Disk> robots;
    std::vector<SimObject> objects;
    std::vector<ConvexPolygon> obstacles;
    std::vector<Pose2> goals;  // anonymous object goal poses
};

// Quasi-static pseudo-physics. This deliberately replaces a full contact
// solver: objects translate with the mean robot penetration vector, rotate
// with the net contact moment scaled by `compliance`, never move without
// contact, and are clipped against obstacles and each other. It verifies
// coordination logic, not contact fidelity.
struct SimConfig {
    double v_max = 0.25;              // robot speed cap, m/s
    double compliance = 6.0;          // rad per (m^2 of contact moment) per tick
    double max_tick_rotation = 0.05;  // rad
    double contact_tolerance = 1e-6;  // residual robot-object penetration bound
};

// Renders the object's footprint into a binary frame: pixel = 1 iff its raster
// center lies inside the transformed footprint. Throws NotFoundError on a bad id.
OccupancyImage render_occupancy(const WorldState& world, int object_id,
                                const ObservationFrame& frame);

Observation observe_object(const WorldState& world, int object_id, double resolution = 0.02,
                           int width = 64);

// Advances one tick: robots move toward their targets (capped at v_max * dt;
// on robot-robot contact the later-indexed robot stops), penetrations push
// objects quasi-statically, blocked objects stay put and the offending robots
// are projected back out. Deterministic; no randomness anywhere.
void step_world(WorldState& world, const std::vector<Vec2>& targets, double dt,
                const SimConfig& cfg = {});

struct SuccessReport {
    bool success = false;
    std::vector<int> matching;  // object index -> goal index, -1 if unmatched
};

// Anonymous object-goal matching under the success thresholds; exhaustive for
// up to five objects, augmenting-path bipartite matching beyond.
SuccessReport check_success(const WorldState& world, double translation_tolerance = 0.15,
                            double rotation_tolerance = 0.5);

}  // namespace gco
