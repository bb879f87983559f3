#include "gco/geometry.hpp"

#include <algorithm>
#include <limits>

namespace gco {

double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

bool ConvexPolygon::is_valid() const {
    const size_t n = vertices.size();
    if (n < 3) return false;
    for (const Vec2& v : vertices)
        if (!is_finite(v)) return false;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % n];
        const Vec2 c = vertices[(i + 2) % n];
        if (norm_sq(b - a) == 0.0) return false;
        // Strict convexity with CCW orientation: every turn is a left turn.
        if (cross(b - a, c - b) <= 0.0) return false;
    }
    return true;
}

void ConvexPolygon::validate() const {
    if (!is_valid())
        throw InvalidGeometryError("polygon is not strictly convex CCW with >= 3 distinct vertices");
}

Vec2 ConvexPolygon::centroid() const {
    // Standard area-weighted polygon centroid.
    double area2 = 0.0;
    Vec2 acc{0.0, 0.0};
    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % n];
        const double w = cross(a, b);
        area2 += w;
        acc += (a + b) * w;
    }
    if (area2 == 0.0) return vertices.empty() ? Vec2{} : vertices[0];
    return acc / (3.0 * area2);
}

double ConvexPolygon::circumradius_about(Vec2 p) const {
    double r = 0.0;
    for (const Vec2& v : vertices) r = std::max(r, distance(v, p));
    return r;
}

bool ConvexPolygon::contains(Vec2 p) const {
    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % n];
        if (cross(b - a, p - a) < 0.0) return false;
    }
    return true;
}

bool edge_edge_conflict(const MotionEdge& e1, const MotionEdge& e2, double r) {
    if (!is_finite(e1.from) || !is_finite(e1.to) || !is_finite(e2.from) || !is_finite(e2.to) ||
        !std::isfinite(r))
        throw InvalidGeometryError("edge_edge_conflict: non-finite input");

    // Relative center position is affine in t: p(t) = p0 + t*dv.
    const Vec2 p0 = e2.from - e1.from;
    const Vec2 dv = (e2.to - e2.from) - (e1.to - e1.from);
    const double a = norm_sq(dv);
    const double threshold_sq = 4.0 * r * r;

    if (a == 0.0) return norm_sq(p0) < threshold_sq;

    double t = -dot(p0, dv) / a;
    t = std::clamp(t, 0.0, 1.0);
    return norm_sq(p0 + dv * t) < threshold_sq;
}

bool edge_state_conflict(const MotionEdge& e, Vec2 q, double r) {
    if (!is_finite(e.from) || !is_finite(e.to) || !is_finite(q) || !std::isfinite(r))
        throw InvalidGeometryError("edge_state_conflict: non-finite input");
    return segment_point_distance(e.from, e.to, q) < 2.0 * r;
}

Vec2 closest_point_on_segment(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len_sq = norm_sq(ab);
    if (len_sq == 0.0) return a;
    const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    return a + ab * t;
}

double segment_point_distance(Vec2 a, Vec2 b, Vec2 p) {
    return distance(p, closest_point_on_segment(a, b, p));
}

double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    // Proper intersection means distance zero.
    const Vec2 da = a1 - a0, db = b1 - b0;
    const double d1 = cross(db, a0 - b0);
    const double d2 = cross(db, a1 - b0);
    const double d3 = cross(da, b0 - a0);
    const double d4 = cross(da, b1 - a0);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 0.0;
    double d = segment_point_distance(a0, a1, b0);
    d = std::min(d, segment_point_distance(a0, a1, b1));
    d = std::min(d, segment_point_distance(b0, b1, a0));
    d = std::min(d, segment_point_distance(b0, b1, a1));
    return d;
}

double point_polygon_distance(Vec2 p, const ConvexPolygon& poly) {
    if (poly.contains(p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const size_t n = poly.vertices.size();
    for (size_t i = 0; i < n; ++i)
        best = std::min(best, segment_point_distance(poly.vertices[i], poly.vertices[(i + 1) % n], p));
    return best;
}

double segment_polygon_distance(Vec2 a, Vec2 b, const ConvexPolygon& poly) {
    if (poly.contains(a) || poly.contains(b)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const size_t n = poly.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        best = std::min(best,
                        segment_segment_distance(a, b, poly.vertices[i], poly.vertices[(i + 1) % n]));
        if (best == 0.0) return 0.0;
    }
    return best;
}

std::optional<Penetration> disk_polygon_overlap(const Disk& d, const ConvexPolygon& p) {
    p.validate();
    if (!is_finite(d.center) || !std::isfinite(d.radius) || d.radius <= 0.0)
        throw InvalidGeometryError("disk_polygon_overlap: invalid disk");

    const size_t n = p.vertices.size();
    if (p.contains(d.center)) {
        // Push out through the nearest face; depth grows with the interior distance.
        double best = std::numeric_limits<double>::infinity();
        Vec2 best_normal;
        for (size_t i = 0; i < n; ++i) {
            const Vec2 a = p.vertices[i];
            const Vec2 b = p.vertices[(i + 1) % n];
            const Vec2 edge = b - a;
            const Vec2 outward = Vec2{edge.y, -edge.x} / norm(edge);  // CCW polygon: right side is out
            const double dist_to_face = -dot(d.center - a, outward);  // >= 0 inside
            if (dist_to_face < best) {
                best = dist_to_face;
                best_normal = outward;
            }
        }
        return Penetration{d.radius + best, best_normal};
    }

    // Center outside: overlap iff boundary closer than the radius.
    double best = std::numeric_limits<double>::infinity();
    Vec2 closest;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = p.vertices[i];
        const Vec2 b = p.vertices[(i + 1) % n];
        const Vec2 c = closest_point_on_segment(a, b, d.center);
        const double dist = distance(c, d.center);
        if (dist < best) {
            best = dist;
            closest = c;
        }
    }
    if (best >= d.radius) return std::nullopt;
    Vec2 dir = d.center - closest;
    const double len = norm(dir);
    dir = len > 0.0 ? dir / len : Vec2{1.0, 0.0};
    return Penetration{d.radius - best, dir};
}

ConvexPolygon transform_polygon(const Pose2& pose, const ConvexPolygon& p) {
    ConvexPolygon out;
    out.vertices.reserve(p.vertices.size());
    for (const Vec2& v : p.vertices) out.vertices.push_back(pose.apply(v));
    return out;
}

namespace {

bool separated_along_any_axis(const ConvexPolygon& a, const ConvexPolygon& b) {
    const size_t n = a.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2 edge = a.vertices[(i + 1) % n] - a.vertices[i];
        const Vec2 axis = perp(edge);
        double amin = std::numeric_limits<double>::infinity(), amax = -amin;
        for (const Vec2& v : a.vertices) {
            const double s = dot(v, axis);
            amin = std::min(amin, s);
            amax = std::max(amax, s);
        }
        double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin;
        for (const Vec2& v : b.vertices) {
            const double s = dot(v, axis);
            bmin = std::min(bmin, s);
            bmax = std::max(bmax, s);
        }
        if (amax < bmin || bmax < amin) return true;
    }
    return false;
}

}  // namespace

bool polygons_overlap(const ConvexPolygon& a, const ConvexPolygon& b) {
    return !separated_along_any_axis(a, b) && !separated_along_any_axis(b, a);
}

}  // namespace gco
