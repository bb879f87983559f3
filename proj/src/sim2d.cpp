#include "gco/sim2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gco/error.hpp"

namespace gco {

Vec2 SimObject::body_centroid() const {
    // Area-weighted centroid of the union parts (parts assumed disjoint).
    double total = 0.0;
    Vec2 acc{0.0, 0.0};
    for (const ConvexPolygon& p : body) {
        double area2 = 0.0;
        const size_t n = p.vertices.size();
        for (size_t i = 0; i < n; ++i) area2 += cross(p.vertices[i], p.vertices[(i + 1) % n]);
        acc += p.centroid() * (area2 * 0.5);
        total += area2 * 0.5;
    }
    return total != 0.0 ? acc / total : Vec2{};
}

double SimObject::circumradius() const {
    const Vec2 c = body_centroid();
    double r = 0.0;
    for (const ConvexPolygon& p : body) r = std::max(r, p.circumradius_about(c));
    return r;
}

std::vector<ConvexPolygon> SimObject::world_polygons() const {
    std::vector<ConvexPolygon> out;
    out.reserve(body.size());
    for (const ConvexPolygon& p : body) out.push_back(transform_polygon(pose, p));
    return out;
}

OccupancyImage render_occupancy(const WorldState& world, int object_id,
                                const ObservationFrame& frame) {
    const SimObject* obj = nullptr;
    for (const SimObject& o : world.objects)
        if (o.id == object_id) obj = &o;
    if (!obj) throw NotFoundError("render_occupancy: unknown object id");

    const std::vector<ConvexPolygon> polys = obj->world_polygons();
    OccupancyImage img(frame.width);
    for (int iy = 0; iy < frame.width; ++iy)
        for (int ix = 0; ix < frame.width; ++ix) {
            const Vec2 p = frame.pixel_center_world(ix, iy);
            for (const ConvexPolygon& poly : polys)
                if (poly.contains(p)) {
                    img.set(ix, iy, 1);
                    break;
                }
        }
    return img;
}

Observation observe_object(const WorldState& world, int object_id, double resolution, int width) {
    const SimObject* obj = nullptr;
    for (const SimObject& o : world.objects)
        if (o.id == object_id) obj = &o;
    if (!obj) throw NotFoundError("observe_object: unknown object id");
    ObservationFrame frame{obj->world_centroid(), resolution, width};
    return {render_occupancy(world, object_id, frame), frame};
}

namespace {

struct ContactSample {
    Vec2 point;      // on the object boundary
    Vec2 push;       // displacement the contact imparts to the object
};

// Deepest penetration of a disk into a polygon union.
std::optional<Penetration> deepest_overlap(const Disk& d, const std::vector<ConvexPolygon>& polys) {
    std::optional<Penetration> best;
    for (const ConvexPolygon& p : polys) {
        const auto pen = disk_polygon_overlap(d, p);
        if (pen && (!best || pen->depth > best->depth)) best = pen;
    }
    return best;
}

// Largest travel fraction keeping the moving disk at least `sep` away from q.
double clip_disk_motion(Vec2 from, Vec2 delta, Vec2 q, double sep) {
    const double a = norm_sq(delta);
    if (a == 0.0) return 1.0;
    const Vec2 rel = from - q;
    const double b = dot(rel, delta);
    const double c = norm_sq(rel) - sep * sep;
    if (c <= 0.0) return b >= 0.0 ? 1.0 : 0.0;  // touching: may only move away
    const double disc = b * b - a * c;
    if (disc <= 0.0) return 1.0;
    const double t_enter = (-b - std::sqrt(disc)) / a;
    if (t_enter < 0.0 || t_enter >= 1.0) return 1.0;
    return t_enter;
}

Pose2 displaced_pose(const Pose2& pose, Vec2 pivot, Vec2 translation, double rotation) {
    Pose2 out;
    out.rotation = normalize_angle(pose.rotation + rotation);
    out.translation = pivot + translation + rotate(pose.translation - pivot, rotation);
    return out;
}

bool object_placement_blocked(const WorldState& world, size_t obj_index, const Pose2& pose) {
    std::vector<ConvexPolygon> moved;
    for (const ConvexPolygon& p : world.objects[obj_index].body)
        moved.push_back(transform_polygon(pose, p));
    for (const ConvexPolygon& a : moved) {
        for (const ConvexPolygon& obs : world.obstacles)
            if (polygons_overlap(a, obs)) return true;
        for (size_t j = 0; j < world.objects.size(); ++j) {
            if (j == obj_index) continue;
            for (const ConvexPolygon& b : world.objects[j].world_polygons())
                if (polygons_overlap(a, b)) return true;
        }
    }
    return false;
}

}  // namespace

void step_world(WorldState& world, const std::vector<Vec2>& targets, double dt,
                const SimConfig& cfg) {
    if (targets.size() != world.robots.size())
        throw ValidationError("step_world: one target per robot required");
    for (const Vec2& t : targets)
        if (!is_finite(t)) throw ValidationError("step_world: non-finite target");

    // Robot advance; the later-indexed robot yields on mutual contact.
    const double cap = cfg.v_max * dt;
    for (size_t k = 0; k < world.robots.size(); ++k) {
        Disk& rk = world.robots[k];
        Vec2 delta = targets[k] - rk.center;
        const double len = norm(delta);
        if (len > cap) delta = delta * (cap / len);
        double alpha = 1.0;
        for (size_t j = 0; j < world.robots.size(); ++j) {
            if (j == k) continue;
            const double sep = rk.radius + world.robots[j].radius;
            alpha = std::min(alpha, clip_disk_motion(rk.center, delta, world.robots[j].center, sep));
        }
        rk.center += delta * alpha;
    }

    // Quasi-static object response.
    for (size_t oi = 0; oi < world.objects.size(); ++oi) {
        SimObject& obj = world.objects[oi];
        const std::vector<ConvexPolygon> polys = obj.world_polygons();
        const Vec2 centroid = obj.world_centroid();

        std::vector<ContactSample> contacts;
        for (const Disk& robot : world.robots) {
            const auto pen = deepest_overlap(robot, polys);
            if (!pen) continue;
            const Vec2 point = robot.center - pen->direction * (robot.radius - pen->depth);
            contacts.push_back({point, pen->direction * -pen->depth});
        }
        if (contacts.empty()) continue;

        Vec2 translation{0.0, 0.0};
        double moment = 0.0;
        for (const ContactSample& c : contacts) {
            translation += c.push;
            moment += cross(c.point - centroid, c.push);
        }
        translation = translation / static_cast<double>(contacts.size());
        const double rotation =
            std::clamp(cfg.compliance * moment, -cfg.max_tick_rotation, cfg.max_tick_rotation);

        // Clip the motion against obstacles and other objects.
        double alpha = 1.0;
        if (object_placement_blocked(world, oi, displaced_pose(obj.pose, centroid, translation,
                                                               rotation))) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 24; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (object_placement_blocked(
                        world, oi, displaced_pose(obj.pose, centroid, translation * mid,
                                                  rotation * mid)))
                    hi = mid;
                else
                    lo = mid;
            }
            alpha = lo;
        }
        obj.pose = displaced_pose(obj.pose, centroid, translation * alpha, rotation * alpha);
    }

    // Back-project robots still penetrating any object (blocked pushes).
    for (int pass = 0; pass < 8; ++pass) {
        bool any = false;
        for (Disk& robot : world.robots) {
            for (const SimObject& obj : world.objects) {
                const auto pen = deepest_overlap(robot, obj.world_polygons());
                if (pen && pen->depth > cfg.contact_tolerance) {
                    robot.center += pen->direction * pen->depth;
                    any = true;
                }
            }
        }
        if (!any) break;
    }
}

namespace {

bool pose_within(const Pose2& pose, const Pose2& goal, double trans_tol, double rot_tol) {
    return distance(pose.translation, goal.translation) <= trans_tol &&
           std::abs(angle_diff(pose.rotation, goal.rotation)) <= rot_tol;
}

// Kuhn's augmenting-path matching on the compatibility graph.
bool augment(int obj, const std::vector<std::vector<int>>& adj, std::vector<int>& goal_owner,
             std::vector<bool>& visited) {
    for (int g : adj[obj]) {
        if (visited[g]) continue;
        visited[g] = true;
        if (goal_owner[g] < 0 || augment(goal_owner[g], adj, goal_owner, visited)) {
            goal_owner[g] = obj;
            return true;
        }
    }
    return false;
}

}  // namespace

SuccessReport check_success(const WorldState& world, double translation_tolerance,
                            double rotation_tolerance) {
    const size_t m = world.objects.size();
    if (m != world.goals.size())
        throw ValidationError("check_success: object and goal counts differ");

    SuccessReport report;
    report.matching.assign(m, -1);
    if (m == 0) {
        report.success = true;
        return report;
    }

    std::vector<std::vector<int>> adj(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t g = 0; g < m; ++g)
            if (pose_within(world.objects[i].pose, world.goals[g], translation_tolerance,
                            rotation_tolerance))
                adj[i].push_back(static_cast<int>(g));

    if (m <= 5) {
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (size_t i = 0; i < m && ok; ++i)
                ok = std::find(adj[i].begin(), adj[i].end(), perm[i]) != adj[i].end();
            if (ok) {
                report.success = true;
                report.matching.assign(perm.begin(), perm.end());
                return report;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return report;
    }

    std::vector<int> goal_owner(m, -1);
    size_t matched = 0;
    for (size_t i = 0; i < m; ++i) {
        std::vector<bool> visited(m, false);
        if (augment(static_cast<int>(i), adj, goal_owner, visited)) ++matched;
    }
    if (matched == m) {
        report.success = true;
        for (size_t g = 0; g < m; ++g)
            if (goal_owner[g] >= 0) report.matching[goal_owner[g]] = static_cast<int>(g);
    }
    return report;
}

}  // namespace gco
