#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gco/costmap.hpp"
#include "gco/primitives.hpp"

namespace gco {

enum class PlanAlgo { Gspi, Pibt };

// Anonymous multi-robot motion planning problem over motion primitives.
// Goals are interchangeable: any robot may end on any goal point.
struct PlanProblem {
    std::vector<Vec2> starts;
    std::vector<Vec2> goals;
    GridMap map;
    double robot_radius = 0.1;
    PrimitiveConfig primitives{};
    PlanAlgo algo = PlanAlgo::Gspi;
    long max_iters = 0;  // 0 -> 10 * N * (map diameter / primitive length)
    uint64_t seed = 0;
    // nullopt -> straight-line distance fields on obstacle-free maps, Dijkstra otherwise.
    std::optional<bool> euclidean_fields;
    // Orderings of the stepped-on set are enumerated exhaustively up to this size;
    // larger sets use the single priority ordering unless full_permutations is set.
    int permutation_limit = 3;
    bool full_permutations = false;
    // robot -> goal bijection; empty -> random permutation drawn from the seed.
    std::vector<int> initial_assignment;
};

// One executed goal swap, with the full state that justified it at the time
// so audits can re-derive the swap condition from scratch.
struct SwapRecord {
    long iteration = 0;
    int robot_i = 0;
    int robot_j = 0;
    int goal_i = 0;  // goal assigned to robot_i before the swap
    int goal_j = 0;
    Vec2 pos_i, pos_j;
    double d_ia = 0, d_ib = 0, d_ja = 0, d_jb = 0;
};

struct PlanResult {
    std::vector<std::vector<Vec2>> trajectories;  // [robot][step], step 0 is the start
    bool success = false;
    long iterations = 0;
    long swap_count = 0;
    long wait_count = 0;
    double sum_path_length = 0.0;
    std::vector<int> assignment;  // final robot -> goal map
    // Audit trail: every swap, per-iteration total system cost around the swap
    // stage, and every committed edge set.
    std::vector<SwapRecord> swap_log;
    std::vector<double> stage_cost_before;
    std::vector<double> stage_cost_after;
    std::vector<std::vector<MotionEdge>> committed;
    // Effective priority of every robot at the start of each iteration.
    std::vector<std::vector<double>> priority_trace;
};

// Runs the iterative planner until every robot stands exactly on its assigned
// goal (dock edges land exactly) or the iteration cap is reached. Deterministic
// for a fixed (problem, seed).
PlanResult plan(const PlanProblem& problem);

}  // namespace gco
