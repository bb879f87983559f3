#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gco/gco_loop.hpp"
#include "gco/planner.hpp"

#include "json.hpp"

namespace gco {

constexpr const char* kScenarioSchema = "gco-scenario/1";

// A complete benchmark problem: map, robot team, anonymous goals, and
// optionally movable objects with goal poses for closed-loop runs.
struct Scenario {
    std::string name;
    Vec2 bounds_lo;
    Vec2 bounds_hi;
    std::vector<ConvexPolygon> obstacles;
    double robot_radius = 0.1;
    double resolution = 0.05;
    PrimitiveConfig primitives{};
    std::vector<Vec2> starts;
    std::vector<Vec2> goals;
    std::vector<int> assignment;  // optional fixed initial robot -> goal map
    std::vector<uint64_t> seeds{1, 2, 3, 4, 5};
    std::string algo = "gspi";
    std::string policy = "heuristic";
    long max_iters = 0;
    std::optional<bool> euclidean_dist;
    bool full_permutations = false;

    // Closed-loop extras.
    std::vector<SimObject> objects;
    std::vector<Pose2> object_goals;
    double v_max = 0.25;
    int max_actions = 100;

    GridMap build_map() const;
    void validate() const;  // throws ValidationError with entity-level diagnostics
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

PlanProblem make_plan_problem(const Scenario& s, PlanAlgo algo, uint64_t seed);
WorldState world_from_scenario(const Scenario& s);
GcoConfig gco_config_from_scenario(const Scenario& s, uint64_t seed);

// Reads an external-policy file: JSON lines, one record per contact slot
// {"object": id, "slot": b, "contact": [x, y], "trajectory": [[x, y], ...]}.
ManipulationPolicy load_external_policy(const std::string& path, const WorldState& world);

// Built-in scenario families mirroring the benchmark structure: three
// obstacle-free maps scaled by team size, three obstacle maps, a one-lane
// corridor with opposing assignments, a crossed-diagonal pair, and closed-loop
// pushing setups.
Scenario make_empty_rows(int robots);
Scenario make_empty_cols(int robots);
Scenario make_empty_ring(int robots);
Scenario make_blocks(int robots);
Scenario make_gaps(int robots);
Scenario make_slalom(int robots);
Scenario make_corridor_swap();
Scenario make_crossed_pair();
Scenario make_gco_push_single();
Scenario make_gco_push_multi();

struct SuiteParams {
    std::vector<int> empty_scales{5, 25, 60, 125};
    std::vector<int> obstacle_scales{10, 20, 30};
};

std::vector<Scenario> generate_suite(const SuiteParams& params = {});

}  // namespace gco
