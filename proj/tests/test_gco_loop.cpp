#include "gco/gco_loop.hpp"

#include <cmath>

#include "doctest.h"
#include "gco/error.hpp"
#include "gco/scenario.hpp"
#include "gco/sim2d.hpp"

using namespace gco;

namespace {

ConvexPolygon box(Vec2 lo, Vec2 hi) {
    return {{{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}}};
}

GcoConfig small_world_config() {
    GcoConfig cfg;
    cfg.workspace_lo = {0, 0};
    cfg.workspace_hi = {8, 8};
    cfg.robot_radius = 0.03;
    cfg.seed = 1;
    return cfg;
}

WorldState push_world(int objects = 1, int robots = 3) {
    WorldState w;
    for (int i = 0; i < robots; ++i) w.robots.push_back({{3.0, 3.7 + 0.3 * i}, 0.03});
    for (int j = 0; j < objects; ++j) {
        SimObject obj;
        obj.id = j;
        obj.body.push_back(box({-0.2, -0.2}, {0.2, 0.2}));
        obj.pose = {{4.0, 4.0 + 1.5 * j}, 0.0};
        w.objects.push_back(obj);
        w.goals.push_back({{5.0, 4.0 + 1.5 * j}, 0.0});
    }
    return w;
}

}  // namespace

TEST_SUITE("gco_loop") {

TEST_CASE("observe snapshots one framed image per object") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(3, 3);
    const ObservationSet obs = observe(w, cfg);
    REQUIRE(obs.observations.size() == 3);
    for (const Observation& o : obs.observations) {
        CHECK(o.image.width == 64);
        CHECK(o.image.count() > 0);
    }
    // Image content matches the simulator's own renderer for the same frame.
    const OccupancyImage direct = render_occupancy(w, 0, obs.observations[0].frame);
    CHECK(obs.observations[0].image.pixels == direct.pixels);

    w.objects.clear();
    w.goals.clear();
    CHECK(observe(w, cfg).observations.empty());
}

TEST_CASE("an object a meter out gets a two-primitive subgoal toward its goal") {
    const GcoConfig cfg = small_world_config();
    const WorldState w = push_world(1, 3);
    const std::vector<Subgoal> subgoals = plan_objects(w, cfg);
    REQUIRE(subgoals.size() == 1);
    CHECK(subgoals[0].active);
    CHECK(norm(subgoals[0].transform.translation) == doctest::Approx(0.1).epsilon(0.05));
    CHECK(subgoals[0].transform.translation.x > 0.05);
    CHECK(std::abs(subgoals[0].transform.translation.y) < 0.03);
    CHECK(subgoals[0].transform.rotation == doctest::Approx(0.0));
}

TEST_CASE("objects inside the tolerance become inactive with identity subgoals") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(1, 3);
    w.objects[0].pose = {{4.9, 4.02}, 0.2};  // within 0.15 m / 0.5 rad of (5, 4, 0)
    const std::vector<Subgoal> subgoals = plan_objects(w, cfg);
    CHECK_FALSE(subgoals[0].active);
    CHECK(subgoals[0].transform.translation == Vec2{0, 0});
    CHECK(subgoals[0].transform.rotation == 0.0);
}

TEST_CASE("crossed object assignments get reassigned by the object-level swap") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(2, 6);
    // Place each object near the other's nominal goal.
    w.objects[0].pose = {{4.8, 5.5}, 0.0};
    w.objects[1].pose = {{4.8, 4.0}, 0.0};
    const std::vector<Subgoal> subgoals = plan_objects(w, cfg);
    // Goals sit at y = 4.0 and 5.5; each object should head for the nearby one,
    // so neither subgoal asks for a large vertical excursion.
    for (const Subgoal& sg : subgoals)
        if (sg.active) CHECK(std::abs(sg.transform.translation.y) < 0.08);
}

TEST_CASE("budgets spread evenly, cap at three, and fall back to proximity") {
    WorldState w = push_world(3, 7);
    const BudgetMap seven = budget_allocation(w, {0, 1, 2});
    CHECK(seven.budgets == std::vector<int>{3, 2, 2});
    CHECK(seven.idle_robots.empty());
    CHECK(seven.total() == 7);

    WorldState nine = push_world(3, 9);
    const BudgetMap even = budget_allocation(nine, {0, 1, 2});
    CHECK(even.budgets == std::vector<int>{3, 3, 3});
    CHECK(even.idle_robots.empty());

    WorldState twelve = push_world(3, 12);
    const BudgetMap capped = budget_allocation(twelve, {0, 1, 2});
    CHECK(capped.budgets == std::vector<int>{3, 3, 3});
    CHECK(capped.idle_robots.size() == 3);

    // Two robots, five active objects: the two nearest objects win.
    WorldState scarce = push_world(5, 2);
    const BudgetMap proximity = budget_allocation(scarce, {0, 1, 2, 3, 4});
    int funded = 0;
    for (int b : proximity.budgets) funded += b;
    CHECK(funded == 2);
    CHECK(proximity.budgets[0] == 1);  // nearest to the robot row
    CHECK(proximity.budgets[4] == 0);  // farthest
    CHECK(proximity.idle_robots.empty());
}

TEST_CASE("budget conservation holds across arbitrary configurations") {
    for (int robots = 1; robots <= 10; ++robots) {
        for (int active = 0; active <= 4; ++active) {
            WorldState w = push_world(4, robots);
            std::vector<int> act;
            for (int j = 0; j < active; ++j) act.push_back(j);
            const BudgetMap budgets = budget_allocation(w, act);
            CHECK(budgets.total() + static_cast<int>(budgets.idle_robots.size()) == robots);
            for (int b : budgets.budgets) CHECK(b <= kBudgetMax);
            // Even-split rule: funded objects differ by at most one.
            if (!act.empty() && robots >= active) {
                int lo = kBudgetMax + 1, hi = 0;
                for (int j : act) {
                    lo = std::min(lo, budgets.budgets[j]);
                    hi = std::max(hi, budgets.budgets[j]);
                }
                CHECK(hi - lo <= 1);
            }
        }
    }
}

TEST_CASE("a fully satisfied world is a no-op iteration") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(1, 3);
    w.objects[0].pose = {{5.0, 4.0}, 0.0};
    const std::vector<Vec2> before{w.robots[0].center, w.robots[1].center, w.robots[2].center};
    const IterationReport rep = run_iteration(w, make_heuristic_policy(cfg), cfg);
    CHECK_FALSE(rep.failed);
    CHECK(rep.contacts_used == 0);
    CHECK(rep.robot_distance == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(w.robots[i].center == before[i]);
}

TEST_CASE("one iteration moves the object strictly toward its goal") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(1, 3);
    const double before = distance(w.objects[0].world_centroid(), {5.0, 4.0});
    const IterationReport rep = run_iteration(w, make_heuristic_policy(cfg), cfg);
    CHECK_FALSE(rep.failed);
    CHECK(rep.contacts_used == 3);
    const double after = distance(w.objects[0].world_centroid(), {5.0, 4.0});
    CHECK(after < before);
    CHECK(rep.robot_distance > 0.0);
}

TEST_CASE("contacts landing inside inflated obstacles flag the iteration") {
    GcoConfig cfg = small_world_config();
    WorldState w = push_world(1, 3);
    // Wall right behind the object: the heuristic contact (placed behind the
    // object relative to +x displacement) falls into its inflated cells.
    w.obstacles.push_back(box({3.5, 3.0}, {3.8, 5.0}));
    const IterationReport rep = run_iteration(w, make_heuristic_policy(cfg), cfg);
    CHECK(rep.failed);
    CHECK(!rep.failure.empty());
}

TEST_CASE("inactive objects receive no contacts") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(2, 6);
    w.objects[1].pose = {{5.0, 5.5}, 0.0};  // already at its goal
    const ObservationSet obs = observe(w, cfg);
    const std::vector<Subgoal> subgoals = plan_objects(w, cfg);
    CHECK(subgoals[0].active);
    CHECK_FALSE(subgoals[1].active);
    std::vector<int> active;
    for (size_t j = 0; j < subgoals.size(); ++j)
        if (subgoals[j].active) active.push_back(static_cast<int>(j));
    const BudgetMap budgets = budget_allocation(w, active);
    CHECK(budgets.budgets[1] == 0);
}

TEST_CASE("an episode with a trivially satisfied start succeeds in zero actions") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(1, 3);
    w.objects[0].pose = {{5.0, 4.0}, 0.0};
    const EpisodeResult result = run_episode(w, make_heuristic_policy(cfg), cfg);
    CHECK(result.success);
    CHECK(result.actions_used == 0);
    CHECK(result.avg_distance_per_robot == 0.0);
}

TEST_CASE("a zero-budget policy leaves the object untouched and fails at the cap") {
    GcoConfig cfg = small_world_config();
    cfg.max_actions = 5;
    WorldState w = push_world(1, 3);
    const Pose2 before = w.objects[0].pose;
    const ManipulationPolicy empty_policy = [](const Observation&, const Pose2&, int) {
        return PolicyOutput{};
    };
    const EpisodeResult result = run_episode(w, empty_policy, cfg);
    CHECK_FALSE(result.success);
    CHECK(result.actions_used == 5);
    CHECK(w.objects[0].pose.translation == before.translation);
}

TEST_CASE("a zero action cap fails immediately unless already satisfied") {
    GcoConfig cfg = small_world_config();
    cfg.max_actions = 0;
    WorldState pending = push_world(1, 3);
    const EpisodeResult blocked = run_episode(pending, make_heuristic_policy(cfg), cfg);
    CHECK_FALSE(blocked.success);
    CHECK(blocked.actions_used == 0);

    WorldState satisfied = push_world(1, 3);
    satisfied.objects[0].pose = {{5.0, 4.0}, 0.0};
    CHECK(run_episode(satisfied, make_heuristic_policy(cfg), cfg).success);
}

TEST_CASE("episode accounting is self-consistent") {
    GcoConfig cfg = small_world_config();
    cfg.max_actions = 3;
    WorldState w = push_world(1, 3);
    const EpisodeResult result = run_episode(w, make_heuristic_policy(cfg), cfg);
    double total = 0.0;
    for (const IterationReport& rep : result.iterations) total += rep.robot_distance;
    CHECK(result.total_distance == doctest::Approx(total).epsilon(1e-12));
    CHECK(result.avg_distance_per_robot ==
          doctest::Approx(result.total_distance / 3.0).epsilon(1e-12));
}

TEST_CASE("the full episode pushes one square a meter within the action cap") {
    const GcoConfig cfg = small_world_config();
    WorldState w = push_world(1, 3);
    const EpisodeResult result = run_episode(w, make_heuristic_policy(cfg), cfg);
    CHECK(result.success);
    CHECK(result.actions_used <= 100);
    CHECK(check_success(w).success);
}

}  // TEST_SUITE
