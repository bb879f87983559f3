#pragma once

#include <vector>

#include "gco/flow.hpp"
#include "gco/observation.hpp"

namespace gco {

struct Contact {
    Vec2 point;
    bool masked = false;
};

// Up to kBudgetMax contact points; unmasked entries are live.
struct ContactSet {
    std::vector<Contact> contacts;

    int unmasked_count() const {
        int n = 0;
        for (const Contact& c : contacts) n += !c.masked;
        return n;
    }
};

// One waypoint sequence per unmasked contact; waypoint 0 is the contact itself.
struct TrajectorySet {
    std::vector<std::vector<Vec2>> trajectories;
};

// Sentinel convention for continuous contact masking: a contact within
// `epsilon` of `sentinel` counts as masked. The default sentinel sits outside
// every observation frame; epsilon defaults to half a pixel.
struct MaskConvention {
    Vec2 sentinel{-1.0, -1.0};
    double epsilon = 0.01;
};

struct HeuristicConfig {
    double standoff = 0.05;   // meters behind the observation centroid
    double spacing = 0.08;    // lateral spacing between neighboring contacts
    double clearance = 0.1;   // extra radial clearance after a shift (robot radius)
    int horizon = 16;         // minimum waypoints per trajectory
    double max_step = 0.05;   // waypoint spacing cap; trajectories resample above it
};

struct PolicyOutput {
    ContactSet contacts;       // world frame
    TrajectorySet trajectories;
    bool rotation_only = false;  // best-effort tangential placement was used
};

// Moves a point the way the requested object transform would: rotation about
// the pivot (the observation centroid), then translation.
inline Vec2 apply_subgoal(const Pose2& T, Vec2 pivot, Vec2 p) {
    return pivot + T.translation + rotate(p - pivot, T.rotation);
}

// Rule-based manipulation policy: places up to min(budget, 3) contacts one
// standoff behind the observation centroid relative to the requested
// displacement, arranged center-symmetrically on the perpendicular line, then
// shifts any contact overlapping the observed mask radially outward until
// clear plus clearance. Trajectories linearly interpolate each contact to its
// image under T. Zero displacement with zero rotation, or zero budget, yields
// an empty output; pure rotations place an antipodal tangential pair.
PolicyOutput heuristic_policy(const Observation& obs, const Pose2& T, int budget,
                              const HeuristicConfig& cfg = {});

// Token pairs -> object-frame contact points; a pair containing the mask token
// is a masked slot. Throws ValidationError on tokens outside {1..w} u {mask}.
ContactSet decode_contacts(const DiscreteState& K, const ObservationFrame& frame);

// Count of live contacts under the masking convention.
int effective_budget(const ContactSet& contacts, const MaskConvention& convention = {});

// Rigid transform of unmasked contact points by the object pose.
ContactSet contacts_to_world(const ContactSet& object_frame, const Pose2& object_pose);

}  // namespace gco
