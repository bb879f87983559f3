#pragma once

#include <functional>
#include <vector>

#include "gco/planner.hpp"
#include "gco/policy.hpp"
#include "gco/sim2d.hpp"

namespace gco {

// Short-horizon relative transform requested for one object. Inactive objects
// (already within the success tolerances) carry the identity.
struct Subgoal {
    Pose2 transform;
    bool active = false;
};

struct BudgetMap {
    std::vector<int> budgets;      // per object, 0 for inactive
    std::vector<int> idle_robots;  // robot indices without a manipulation slot

    int total() const {
        int n = 0;
        for (int b : budgets) n += b;
        return n;
    }
};

struct GcoConfig {
    Vec2 workspace_lo{0.0, 0.0};
    Vec2 workspace_hi{10.0, 10.0};
    double robot_radius = 0.1;
    double resolution = 0.05;
    PrimitiveConfig primitives{};
    HeuristicConfig policy{};
    SimConfig sim{};
    double observation_resolution = 0.02;
    int observation_width = 64;
    double translation_tolerance = 0.15;
    double rotation_tolerance = 0.5;
    double theta_max = 0.3;      // rotation clamp per subgoal
    int object_plan_iters = 2;   // object-level planner horizon
    int max_actions = 100;
    long conveyance_max_iters = 0;  // 0 -> planner default
    uint64_t seed = 0;
};

using ManipulationPolicy =
    std::function<PolicyOutput(const Observation& obs, const Pose2& transform, int budget)>;

struct ObservationSet {
    WorldState snapshot;
    std::vector<Observation> observations;  // one per object, world-aligned frames
};

// Immutable snapshot plus one occupancy image per object.
ObservationSet observe(const WorldState& world, const GcoConfig& cfg);

// Objects abstracted as bounding disks and planned toward the anonymous goal
// centroids for a fixed couple of iterations; the resulting displacement and
// the clamped angular difference to the matched goal become each subgoal.
std::vector<Subgoal> plan_objects(const WorldState& world, const GcoConfig& cfg);

// Spreads robots as evenly as possible over the active objects (each capped at
// kBudgetMax, spread differing by at most one); with fewer robots than active
// objects, the nearest robot-object pairs win a budget of one.
BudgetMap budget_allocation(const WorldState& world, const std::vector<int>& active_objects);

struct IterationReport {
    bool failed = false;         // planner could not route robots this round
    std::string failure;         // diagnostic when failed
    int contacts_used = 0;
    double robot_distance = 0.0;  // summed executed displacement over all robots
    long conveyance_iterations = 0;
};

// One pass of the closed loop: observe, plan object subgoals, allocate
// budgets, query the policy, route robots to the contact points, execute the
// conveyance and manipulation trajectories in the simulator.
IterationReport run_iteration(WorldState& world, const ManipulationPolicy& policy,
                              const GcoConfig& cfg, int action_index = 0);

struct EpisodeResult {
    bool success = false;
    int actions_used = 0;
    double avg_distance_per_robot = 0.0;
    double total_distance = 0.0;
    std::vector<IterationReport> iterations;
};

// Loops run_iteration until the anonymous object-goal matching succeeds or the
// action cap is exhausted.
EpisodeResult run_episode(WorldState& world, const ManipulationPolicy& policy,
                          const GcoConfig& cfg);

// Default policy wiring for the rule-based baseline.
ManipulationPolicy make_heuristic_policy(const GcoConfig& cfg);

}  // namespace gco
