#include "gco/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gco/error.hpp"

namespace gco {

using nlohmann::json;

namespace {

Vec2 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("expected [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vec_to_json(Vec2 v) {
    return json::array({v.x, v.y});
}

Pose2 pose_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ValidationError("expected [x, y, theta] pose");
    return {{j[0].get<double>(), j[1].get<double>()}, normalize_angle(j[2].get<double>())};
}

json pose_to_json(const Pose2& p) {
    return json::array({p.translation.x, p.translation.y, p.rotation});
}

ConvexPolygon polygon_from_json(const json& j) {
    ConvexPolygon poly;
    for (const json& v : j) poly.vertices.push_back(vec_from_json(v));
    poly.validate();
    return poly;
}

json polygon_to_json(const ConvexPolygon& p) {
    json out = json::array();
    for (const Vec2& v : p.vertices) out.push_back(vec_to_json(v));
    return out;
}

std::vector<Vec2> points_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<Vec2> out;
    for (const json& v : j) out.push_back(vec_from_json(v));
    return out;
}

}  // namespace

GridMap Scenario::build_map() const {
    return GridMap::build(bounds_lo, bounds_hi, resolution, obstacles, robot_radius);
}

void Scenario::validate() const {
    std::ostringstream bad;
    if (bounds_hi.x <= bounds_lo.x || bounds_hi.y <= bounds_lo.y) bad << " bounds-empty;";
    if (starts.size() != goals.size()) bad << " starts/goals count mismatch;";
    if (robot_radius <= 0) bad << " robot_radius;";
    if (resolution <= 0) bad << " resolution;";
    if (!assignment.empty() && assignment.size() != starts.size()) bad << " assignment size;";
    if (objects.size() != object_goals.size()) bad << " objects/object_goals count mismatch;";
    if (seeds.empty()) bad << " seeds empty;";
    if (bad.tellp() > 0)
        throw ValidationError("scenario '" + name + "' invalid:" + bad.str());

    const GridMap map = build_map();
    std::ostringstream entities;
    for (size_t i = 0; i < starts.size(); ++i) {
        if (!map.in_bounds(starts[i]) || map.occupied_at(starts[i]))
            entities << " start[" << i << "]";
        if (!map.in_bounds(goals[i]) || map.occupied_at(goals[i])) entities << " goal[" << i << "]";
    }
    for (size_t i = 0; i < starts.size(); ++i)
        for (size_t j = i + 1; j < starts.size(); ++j)
            if (distance(starts[i], starts[j]) < 2.0 * robot_radius - 1e-12)
                entities << " starts[" << i << "," << j << "]-overlap";
    if (entities.tellp() > 0)
        throw ValidationError("scenario '" + name + "' precondition failures:" + entities.str());
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("scenario: top level must be an object");
    if (j.value("schema", "") != kScenarioSchema)
        throw ValidationError("scenario: missing or unsupported schema (want gco-scenario/1)");

    Scenario s;
    s.name = j.value("name", "unnamed");
    if (!j.contains("bounds") || !j["bounds"].is_array() || j["bounds"].size() != 2)
        throw ValidationError("scenario: bounds must be [[lo_x, lo_y], [hi_x, hi_y]]");
    s.bounds_lo = vec_from_json(j["bounds"][0]);
    s.bounds_hi = vec_from_json(j["bounds"][1]);
    for (const json& p : j.value("obstacles", json::array()))
        s.obstacles.push_back(polygon_from_json(p));
    s.robot_radius = j.value("robot_radius", 0.1);
    s.resolution = j.value("resolution", 0.05);
    s.primitives.length = j.value("prim_len", 0.05);
    s.primitives.headings = j.value("headings", 8);
    s.starts = points_from_json(j.value("starts", json::array()), "starts");
    s.goals = points_from_json(j.value("goals", json::array()), "goals");
    if (j.contains("assignment")) s.assignment = j["assignment"].get<std::vector<int>>();
    if (j.contains("seeds")) s.seeds = j["seeds"].get<std::vector<uint64_t>>();
    s.algo = j.value("algo", "gspi");
    s.policy = j.value("policy", "heuristic");
    s.max_iters = j.value("max_iters", 0L);
    if (j.contains("euclidean_dist")) s.euclidean_dist = j["euclidean_dist"].get<bool>();
    s.full_permutations = j.value("full_permutations", false);
    s.v_max = j.value("v_max", 0.25);
    s.max_actions = j.value("max_actions", 100);

    int next_id = 0;
    for (const json& jo : j.value("objects", json::array())) {
        SimObject obj;
        obj.id = jo.value("id", next_id);
        for (const json& p : jo["polygons"]) obj.body.push_back(polygon_from_json(p));
        obj.pose = pose_from_json(jo["pose"]);
        s.objects.push_back(std::move(obj));
        ++next_id;
    }
    for (const json& g : j.value("object_goals", json::array()))
        s.object_goals.push_back(pose_from_json(g));

    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["schema"] = kScenarioSchema;
    j["name"] = s.name;
    j["bounds"] = json::array({vec_to_json(s.bounds_lo), vec_to_json(s.bounds_hi)});
    j["obstacles"] = json::array();
    for (const ConvexPolygon& p : s.obstacles) j["obstacles"].push_back(polygon_to_json(p));
    j["robot_radius"] = s.robot_radius;
    j["resolution"] = s.resolution;
    j["prim_len"] = s.primitives.length;
    j["headings"] = s.primitives.headings;
    j["starts"] = json::array();
    for (Vec2 v : s.starts) j["starts"].push_back(vec_to_json(v));
    j["goals"] = json::array();
    for (Vec2 v : s.goals) j["goals"].push_back(vec_to_json(v));
    if (!s.assignment.empty()) j["assignment"] = s.assignment;
    j["seeds"] = s.seeds;
    j["algo"] = s.algo;
    j["policy"] = s.policy;
    if (s.max_iters) j["max_iters"] = s.max_iters;
    if (s.euclidean_dist) j["euclidean_dist"] = *s.euclidean_dist;
    if (s.full_permutations) j["full_permutations"] = true;
    if (!s.objects.empty()) {
        j["v_max"] = s.v_max;
        j["max_actions"] = s.max_actions;
        j["objects"] = json::array();
        for (const SimObject& o : s.objects) {
            json jo;
            jo["id"] = o.id;
            jo["polygons"] = json::array();
            for (const ConvexPolygon& p : o.body) jo["polygons"].push_back(polygon_to_json(p));
            jo["pose"] = pose_to_json(o.pose);
            j["objects"].push_back(jo);
        }
        j["object_goals"] = json::array();
        for (const Pose2& g : s.object_goals) j["object_goals"].push_back(pose_to_json(g));
    }
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario parse error in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scenario file: " + path);
    out << scenario_to_json(s).dump(2) << "\n";
}

PlanProblem make_plan_problem(const Scenario& s, PlanAlgo algo, uint64_t seed) {
    PlanProblem pb;
    pb.starts = s.starts;
    pb.goals = s.goals;
    pb.map = s.build_map();
    pb.robot_radius = s.robot_radius;
    pb.primitives = s.primitives;
    pb.algo = algo;
    pb.max_iters = s.max_iters;
    pb.seed = seed;
    pb.euclidean_fields = s.euclidean_dist;
    pb.full_permutations = s.full_permutations;
    pb.initial_assignment = s.assignment;
    return pb;
}

WorldState world_from_scenario(const Scenario& s) {
    WorldState w;
    for (size_t i = 0; i < s.starts.size(); ++i)
        w.robots.push_back({s.starts[i], s.robot_radius});
    w.objects = s.objects;
    w.obstacles = s.obstacles;
    w.goals = s.object_goals;
    return w;
}

GcoConfig gco_config_from_scenario(const Scenario& s, uint64_t seed) {
    GcoConfig cfg;
    cfg.workspace_lo = s.bounds_lo;
    cfg.workspace_hi = s.bounds_hi;
    cfg.robot_radius = s.robot_radius;
    cfg.resolution = s.resolution;
    cfg.primitives = s.primitives;
    cfg.sim.v_max = s.v_max;
    cfg.max_actions = s.max_actions;
    cfg.seed = seed;
    return cfg;
}

ManipulationPolicy load_external_policy(const std::string& path, const WorldState& world) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open policy file: " + path);

    struct Slot {
        Vec2 contact;
        std::vector<Vec2> trajectory;
    };
    auto slots = std::make_shared<std::map<int, std::vector<Slot>>>();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError("policy file line " + std::to_string(lineno) + ": " + e.what());
        }
        Slot slot;
        slot.contact = vec_from_json(j.at("contact"));
        for (const json& w : j.at("trajectory")) slot.trajectory.push_back(vec_from_json(w));
        (*slots)[j.at("object").get<int>()].push_back(std::move(slot));
    }

    // Frames are centered per object; recover the object id from the frame center.
    auto centers = std::make_shared<std::vector<std::pair<int, Vec2>>>();
    for (const SimObject& o : world.objects) centers->push_back({o.id, o.world_centroid()});

    return [slots, centers](const Observation& obs, const Pose2&, int budget) {
        int best_id = -1;
        double best = kInf;
        for (const auto& [id, c] : *centers) {
            const double d = distance(c, obs.frame.center);
            if (d < best) {
                best = d;
                best_id = id;
            }
        }
        PolicyOutput out;
        const auto it = slots->find(best_id);
        if (it == slots->end()) return out;
        const int count = std::min<int>(budget, static_cast<int>(it->second.size()));
        for (int b = 0; b < count; ++b) {
            out.contacts.contacts.push_back({it->second[b].contact, false});
            out.trajectories.trajectories.push_back(it->second[b].trajectory);
        }
        return out;
    };
}

namespace {

Scenario base_scenario(std::string name, Vec2 lo, Vec2 hi) {
    Scenario s;
    s.name = std::move(name);
    s.bounds_lo = lo;
    s.bounds_hi = hi;
    return s;
}

// Rectangular grid of points with a fixed pitch, centered horizontally.
std::vector<Vec2> point_grid(int count, Vec2 anchor, int cols, double pitch) {
    std::vector<Vec2> pts;
    for (int k = 0; k < count; ++k)
        pts.push_back({anchor.x + (k % cols) * pitch, anchor.y + (k / cols) * pitch});
    return pts;
}

ConvexPolygon box(Vec2 lo, Vec2 hi) {
    return {{{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}}};
}

}  // namespace

namespace {

// Start block at the bottom, goal block at the top, two meters of free space
// between them for the obstacle variants to decorate.
struct RowsLayout {
    int cols = 0;
    double width = 0.0;
    double height = 0.0;
    double middle_lo = 0.0;  // free band between the grids
    double middle_hi = 0.0;
};

RowsLayout rows_layout(int robots) {
    const double pitch = 0.3;
    RowsLayout l;
    l.cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(robots))));
    const int rows = (robots + l.cols - 1) / l.cols;
    const double block = rows * pitch;
    l.width = l.cols * pitch + 1.0;
    l.height = 2.0 * block + 3.0;
    l.middle_lo = 0.65 + (rows - 1) * pitch + 0.3;
    l.middle_hi = block + 2.35 - 0.3;
    return l;
}

}  // namespace

Scenario make_empty_rows(int robots) {
    const RowsLayout l = rows_layout(robots);
    Scenario s = base_scenario("empty_rows_n" + std::to_string(robots), {0, 0},
                               {l.width, l.height});
    s.starts = point_grid(robots, {0.65, 0.65}, l.cols, 0.3);
    s.goals = point_grid(robots, {0.65, l.middle_hi + 0.3}, l.cols, 0.3);
    s.max_iters = 5000;
    return s;
}

Scenario make_empty_cols(int robots) {
    const double pitch = 0.3;
    const int rows = std::max(1, static_cast<int>(std::ceil(std::sqrt(robots))));
    const int cols = (robots + rows - 1) / rows;
    const double h = rows * pitch + 1.0;
    const double block = cols * pitch;
    Scenario s = base_scenario("empty_cols_n" + std::to_string(robots), {0, 0},
                               {2.0 * block + 3.0, h});
    std::vector<Vec2> starts, goals;
    for (int k = 0; k < robots; ++k) {
        starts.push_back({0.65 + (k / rows) * pitch, 0.65 + (k % rows) * pitch});
        goals.push_back({block + 2.35 + (k / rows) * pitch, 0.65 + (k % rows) * pitch});
    }
    s.starts = starts;
    s.goals = goals;
    s.max_iters = 5000;
    return s;
}

Scenario make_empty_ring(int robots) {
    const double spacing = 0.35;
    const double radius = std::max(1.2, robots * spacing / (2.0 * M_PI));
    const double half = radius + 1.0;
    Scenario s = base_scenario("empty_ring_n" + std::to_string(robots), {-half, -half},
                               {half, half});
    for (int k = 0; k < robots; ++k) {
        const double a = 2.0 * M_PI * k / robots;
        s.starts.push_back({radius * std::cos(a), radius * std::sin(a)});
        // Goals sit opposite the starts, offset by half a slot so the two
        // point sets never coincide: fixed assignments must cross the center
        // while goal swapping only has to close the half-slot arc.
        const double g = a + M_PI + M_PI / robots;
        s.goals.push_back({radius * std::cos(g), radius * std::sin(g)});
    }
    s.max_iters = 5000;
    return s;
}

Scenario make_blocks(int robots) {
    Scenario s = make_empty_rows(robots);
    s.name = "blocks_n" + std::to_string(robots);
    const RowsLayout l = rows_layout(robots);
    const double mid = 0.5 * (l.middle_lo + l.middle_hi);
    // Block islands across the middle band with 0.6 m corridors between them.
    for (double x = 0.3; x + 0.5 < l.width; x += 1.1)
        s.obstacles.push_back(box({x, mid - 0.2}, {x + 0.5, mid + 0.2}));
    s.max_iters = 8000;
    return s;
}

Scenario make_gaps(int robots) {
    Scenario s = make_empty_rows(robots);
    s.name = "gaps_n" + std::to_string(robots);
    const RowsLayout l = rows_layout(robots);
    const double y0 = 0.5 * (l.middle_lo + l.middle_hi) - 0.15;
    const double y1 = y0 + 0.3;
    const double gap = 0.6;
    // One wall with two openings at one- and two-thirds of the width.
    const double g1 = l.width / 3.0, g2 = 2.0 * l.width / 3.0;
    s.obstacles.push_back(box({0.0, y0}, {g1 - gap / 2, y1}));
    s.obstacles.push_back(box({g1 + gap / 2, y0}, {g2 - gap / 2, y1}));
    s.obstacles.push_back(box({g2 + gap / 2, y0}, {l.width, y1}));
    s.max_iters = 8000;
    return s;
}

Scenario make_slalom(int robots) {
    Scenario s = make_empty_rows(robots);
    s.name = "slalom_n" + std::to_string(robots);
    const RowsLayout l = rows_layout(robots);
    const double t = 0.1;
    const double opening = std::max(0.8, l.width * 0.35);
    // Two staggered thin walls with side openings on opposite ends force an
    // S-shaped route; the bands between walls stay several cells tall after
    // inflation so queues can pass.
    const double span = l.middle_hi - l.middle_lo;
    const double y1 = l.middle_lo + 0.3 * span;
    const double y2 = l.middle_lo + 0.7 * span;
    s.obstacles.push_back(box({0.0, y1}, {l.width - opening, y1 + t}));
    s.obstacles.push_back(box({opening, y2}, {l.width, y2 + t}));
    s.max_iters = 12000;
    return s;
}

Scenario make_corridor_swap() {
    Scenario s = base_scenario("corridor_swap", {0, 0}, {3.6, 2.0});
    const double y = 1.0;
    // Two full-width slabs leave a single-lane corridor: the free band is too
    // narrow for robots of radius 0.1 to pass each other and has no detour.
    s.obstacles.push_back(box({0.0, y + 0.15}, {3.6, 2.0}));
    s.obstacles.push_back(box({0.0, 0.0}, {3.6, y - 0.15}));
    s.goals = {{1.2, y}, {2.4, y}};
    // Each robot starts on the goal assigned to the other one.
    s.starts = {{2.4, y}, {1.2, y}};
    s.assignment = {0, 1};
    s.max_iters = 5000;
    return s;
}

Scenario make_crossed_pair() {
    Scenario s = base_scenario("crossed_pair", {0, 0}, {2.0, 2.0});
    s.starts = {{0.4, 0.4}, {1.6, 1.6}};
    // Assignments point each robot at the far corner next to the other robot.
    s.goals = {{1.5, 1.5}, {0.5, 0.5}};
    s.assignment = {0, 1};
    s.max_iters = 5000;
    return s;
}

Scenario make_gco_push_single() {
    Scenario s = base_scenario("gco_push_single", {0, 0}, {8.0, 8.0});
    s.robot_radius = 0.03;
    s.starts = {{3.0, 3.7}, {3.0, 4.0}, {3.0, 4.3}};
    s.goals = s.starts;  // placeholder for schema symmetry; gco runs ignore it
    SimObject obj;
    obj.id = 0;
    obj.body.push_back(box({-0.2, -0.2}, {0.2, 0.2}));
    obj.pose = {{4.0, 4.0}, 0.0};
    s.objects.push_back(obj);
    s.object_goals.push_back({{5.0, 4.0}, 0.0});
    s.max_actions = 100;
    return s;
}

Scenario make_gco_push_multi() {
    Scenario s = base_scenario("gco_push_multi", {0, 0}, {10.0, 10.0});
    s.robot_radius = 0.03;
    s.starts = {{3.0, 3.4}, {3.0, 3.7}, {3.0, 4.0}, {3.0, 5.6}, {3.0, 5.9}, {3.0, 6.2}};
    s.goals = s.starts;
    for (int j = 0; j < 2; ++j) {
        SimObject obj;
        obj.id = j;
        obj.body.push_back(box({-0.2, -0.2}, {0.2, 0.2}));
        obj.pose = {{4.0, 4.0 + 2.0 * j}, 0.0};
        s.objects.push_back(obj);
        s.object_goals.push_back({{5.2, 4.0 + 2.0 * j}, 0.0});
    }
    s.max_actions = 100;
    return s;
}

std::vector<Scenario> generate_suite(const SuiteParams& params) {
    std::vector<Scenario> out;
    for (int n : params.empty_scales) out.push_back(make_empty_rows(n));
    if (!params.empty_scales.empty()) {
        const int mid = params.empty_scales[params.empty_scales.size() / 2];
        out.push_back(make_empty_cols(mid));
        out.push_back(make_empty_ring(mid));
    }
    if (params.obstacle_scales.size() > 0) out.push_back(make_blocks(params.obstacle_scales[0]));
    if (params.obstacle_scales.size() > 1) out.push_back(make_gaps(params.obstacle_scales[1]));
    if (params.obstacle_scales.size() > 2) out.push_back(make_slalom(params.obstacle_scales[2]));
    out.push_back(make_corridor_swap());
    out.push_back(make_crossed_pair());
    return out;
}

}  // namespace gco
