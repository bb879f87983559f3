#include "gco/gco_loop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gco/error.hpp"
#include "gco/rng.hpp"

namespace gco {

namespace {

constexpr uint64_t kObjectPlanSalt = 0x6f626a00;
constexpr uint64_t kConveyanceSalt = 0x636e7600;

GridMap build_planning_map(const WorldState& world, const GcoConfig& cfg, double inflation) {
    return GridMap::build(cfg.workspace_lo, cfg.workspace_hi, cfg.resolution, world.obstacles,
                          inflation);
}

bool within_tolerance(const Pose2& pose, const Pose2& goal, const GcoConfig& cfg) {
    return distance(pose.translation, goal.translation) <= cfg.translation_tolerance &&
           std::abs(angle_diff(pose.rotation, goal.rotation)) <= cfg.rotation_tolerance;
}

// Idle robots wait near workspace corners, picked by distance from the action
// and fanned inward so stations stay pairwise clear.
std::vector<Vec2> safe_stations(const WorldState& world, const GcoConfig& cfg, int count,
                                const GridMap& map) {
    const double inset = 2.0 * cfg.robot_radius + cfg.resolution;
    const Vec2 lo = cfg.workspace_lo + Vec2{inset, inset};
    const Vec2 hi = cfg.workspace_hi - Vec2{inset, inset};
    std::vector<Vec2> corners{{lo.x, lo.y}, {hi.x, lo.y}, {lo.x, hi.y}, {hi.x, hi.y}};

    auto clutter_distance = [&](Vec2 p) {
        double d = kInf;
        for (const SimObject& o : world.objects) d = std::min(d, distance(p, o.world_centroid()));
        for (const Pose2& g : world.goals) d = std::min(d, distance(p, g.translation));
        return d;
    };
    std::sort(corners.begin(), corners.end(), [&](Vec2 a, Vec2 b) {
        const double da = clutter_distance(a), db = clutter_distance(b);
        if (da != db) return da > db;
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });

    std::vector<Vec2> stations;
    const Vec2 center = (cfg.workspace_lo + cfg.workspace_hi) * 0.5;
    for (int k = 0; k < count; ++k) {
        const Vec2 corner = corners[k % 4];
        Vec2 inward = center - corner;
        inward = inward / std::max(norm(inward), 1e-9);
        Vec2 p = corner + inward * (3.0 * cfg.robot_radius * (k / 4));
        // Nudge into free space if the corner cell happens to be inflated.
        for (int tries = 0; tries < 200 && map.in_bounds(p) && map.occupied_at(p); ++tries)
            p += inward * cfg.resolution;
        stations.push_back(p);
    }
    return stations;
}

}  // namespace

ObservationSet observe(const WorldState& world, const GcoConfig& cfg) {
    ObservationSet out{world, {}};
    out.observations.reserve(world.objects.size());
    for (const SimObject& obj : world.objects)
        out.observations.push_back(observe_object(world, obj.id, cfg.observation_resolution,
                                                  cfg.observation_width));
    return out;
}

std::vector<Subgoal> plan_objects(const WorldState& world, const GcoConfig& cfg) {
    const size_t m = world.objects.size();
    if (m != world.goals.size())
        throw ValidationError("plan_objects: object and goal counts differ");
    std::vector<Subgoal> subgoals(m);
    if (m == 0) return subgoals;

    double bounding_radius = 0.0;
    for (const SimObject& o : world.objects)
        bounding_radius = std::max(bounding_radius, o.circumradius());

    PlanProblem pb;
    pb.map = build_planning_map(world, cfg, bounding_radius);
    pb.robot_radius = bounding_radius;
    pb.primitives = cfg.primitives;
    pb.algo = PlanAlgo::Gspi;
    pb.max_iters = cfg.object_plan_iters;
    pb.seed = derive_seed(cfg.seed, kObjectPlanSalt);
    pb.initial_assignment.resize(m);
    std::iota(pb.initial_assignment.begin(), pb.initial_assignment.end(), 0);
    for (size_t j = 0; j < m; ++j) {
        pb.starts.push_back(world.objects[j].world_centroid());
        pb.goals.push_back(world.goals[j].apply(world.objects[j].body_centroid()));
    }

    PlanResult plan_result;
    try {
        plan_result = plan(pb);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("plan_objects: object-level planning failed: ") +
                              e.what());
    }

    for (size_t j = 0; j < m; ++j) {
        const int goal = plan_result.assignment[j];
        if (within_tolerance(world.objects[j].pose, world.goals[goal], cfg)) {
            subgoals[j] = {Pose2::identity(), false};
            continue;
        }
        const auto& traj = plan_result.trajectories[j];
        Subgoal sg;
        sg.active = true;
        sg.transform.translation = traj.back() - traj.front();
        sg.transform.rotation =
            std::clamp(angle_diff(world.goals[goal].rotation, world.objects[j].pose.rotation),
                       -cfg.theta_max, cfg.theta_max);
        subgoals[j] = sg;
    }
    return subgoals;
}

BudgetMap budget_allocation(const WorldState& world, const std::vector<int>& active_objects) {
    const int n = static_cast<int>(world.robots.size());
    const int a = static_cast<int>(active_objects.size());
    BudgetMap out;
    out.budgets.assign(world.objects.size(), 0);

    if (a == 0) {
        for (int i = 0; i < n; ++i) out.idle_robots.push_back(i);
        return out;
    }

    if (n >= a) {
        const int base = n / a;
        const int rem = n % a;
        for (int rank = 0; rank < a; ++rank)
            out.budgets[active_objects[rank]] = std::min(base + (rank < rem ? 1 : 0), kBudgetMax);
    } else {
        // Greedy proximity matching on centroid-robot distance.
        struct Pair {
            double d;
            int robot, object;
        };
        std::vector<Pair> pairs;
        for (int r = 0; r < n; ++r)
            for (int obj : active_objects)
                pairs.push_back({distance(world.robots[r].center,
                                          world.objects[obj].world_centroid()),
                                 r, obj});
        std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
            if (x.d != y.d) return x.d < y.d;
            if (x.robot != y.robot) return x.robot < y.robot;
            return x.object < y.object;
        });
        std::vector<bool> robot_used(n, false);
        std::vector<bool> object_used(world.objects.size(), false);
        for (const Pair& p : pairs) {
            if (robot_used[p.robot] || object_used[p.object]) continue;
            robot_used[p.robot] = true;
            object_used[p.object] = true;
            out.budgets[p.object] = 1;
        }
    }

    int assigned = 0;
    for (int b : out.budgets) assigned += b;
    // Which robots idle is settled later by the anonymous conveyance plan; the
    // list records the surplus head-count.
    out.idle_robots.resize(std::max(0, n - assigned));
    std::iota(out.idle_robots.begin(), out.idle_robots.end(), 0);
    return out;
}

IterationReport run_iteration(WorldState& world, const ManipulationPolicy& policy,
                              const GcoConfig& cfg, int action_index) {
    IterationReport report;
    const int n = static_cast<int>(world.robots.size());

    const ObservationSet obs = observe(world, cfg);

    std::vector<Subgoal> subgoals;
    try {
        subgoals = plan_objects(world, cfg);
    } catch (const ValidationError& e) {
        report.failed = true;
        report.failure = e.what();
        return report;
    }

    std::vector<int> active;
    for (size_t j = 0; j < subgoals.size(); ++j)
        if (subgoals[j].active) active.push_back(static_cast<int>(j));
    if (active.empty()) return report;  // nothing to manipulate, nobody moves
    const BudgetMap budgets = budget_allocation(world, active);

    // Query the policy per funded object and pool the contact goals.
    std::vector<Vec2> contact_goals;
    std::vector<std::vector<Vec2>> contact_trajectories;
    for (int j : active) {
        if (budgets.budgets[j] == 0) continue;
        const PolicyOutput out = policy(obs.observations[j], subgoals[j].transform,
                                        budgets.budgets[j]);
        for (size_t b = 0; b < out.contacts.contacts.size(); ++b) {
            if (out.contacts.contacts[b].masked) continue;
            contact_goals.push_back(out.contacts.contacts[b].point);
            contact_trajectories.push_back(out.trajectories.trajectories[b]);
        }
    }
    report.contacts_used = static_cast<int>(contact_goals.size());

    // Conveyance: anonymous goals are the contacts plus idle stations.
    PlanProblem pb;
    pb.map = build_planning_map(world, cfg, cfg.robot_radius);
    pb.robot_radius = cfg.robot_radius;
    pb.primitives = cfg.primitives;
    pb.algo = PlanAlgo::Gspi;
    pb.max_iters = cfg.conveyance_max_iters;
    pb.seed = derive_seed(cfg.seed, kConveyanceSalt + static_cast<uint64_t>(action_index));
    for (const Disk& r : world.robots) pb.starts.push_back(r.center);
    pb.goals = contact_goals;
    const std::vector<Vec2> stations =
        safe_stations(world, cfg, n - static_cast<int>(contact_goals.size()), pb.map);
    pb.goals.insert(pb.goals.end(), stations.begin(), stations.end());

    PlanResult conveyance;
    try {
        conveyance = plan(pb);
    } catch (const ValidationError& e) {
        report.failed = true;
        report.failure = e.what();
        return report;
    }
    if (!conveyance.success) {
        report.failed = true;
        report.failure = "conveyance planning hit the iteration cap";
        return report;
    }
    report.conveyance_iterations = conveyance.iterations;

    const double dt = cfg.primitives.length / cfg.sim.v_max;
    auto execute_tick = [&](const std::vector<Vec2>& targets) {
        std::vector<Vec2> before(n);
        for (int i = 0; i < n; ++i) before[i] = world.robots[i].center;
        step_world(world, targets, dt, cfg.sim);
        for (int i = 0; i < n; ++i)
            report.robot_distance += distance(world.robots[i].center, before[i]);
    };

    for (long s = 1; s <= conveyance.iterations; ++s) {
        std::vector<Vec2> targets(n);
        for (int i = 0; i < n; ++i) targets[i] = conveyance.trajectories[i][s];
        execute_tick(targets);
    }

    // Manipulation: robots assigned to contact goals follow the corresponding
    // trajectories in lockstep; everyone else holds position.
    size_t longest = 0;
    for (const auto& t : contact_trajectories) longest = std::max(longest, t.size());
    for (size_t w = 1; w < longest; ++w) {
        std::vector<Vec2> targets(n);
        for (int i = 0; i < n; ++i) {
            const int goal = conveyance.assignment[i];
            if (goal < static_cast<int>(contact_trajectories.size())) {
                const auto& traj = contact_trajectories[goal];
                targets[i] = traj[std::min(w, traj.size() - 1)];
            } else {
                targets[i] = world.robots[i].center;
            }
        }
        execute_tick(targets);
    }
    return report;
}

EpisodeResult run_episode(WorldState& world, const ManipulationPolicy& policy,
                          const GcoConfig& cfg) {
    EpisodeResult result;
    const int n = static_cast<int>(world.robots.size());
    while (true) {
        if (check_success(world, cfg.translation_tolerance, cfg.rotation_tolerance).success) {
            result.success = true;
            break;
        }
        if (result.actions_used >= cfg.max_actions) break;
        IterationReport rep = run_iteration(world, policy, cfg, result.actions_used);
        result.total_distance += rep.robot_distance;
        result.iterations.push_back(std::move(rep));
        ++result.actions_used;
    }
    result.avg_distance_per_robot = n > 0 ? result.total_distance / n : 0.0;
    return result;
}

ManipulationPolicy make_heuristic_policy(const GcoConfig& cfg) {
    HeuristicConfig hc = cfg.policy;
    hc.clearance = cfg.robot_radius;
    return [hc](const Observation& obs, const Pose2& transform, int budget) {
        return heuristic_policy(obs, transform, budget, hc);
    };
}

}  // namespace gco
