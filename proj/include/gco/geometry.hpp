#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "gco/error.hpp"

namespace gco {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }
inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// Wraps an angle to (-pi, pi].
double normalize_angle(double a);

// Signed angular difference a - b, wrapped to (-pi, pi].
inline double angle_diff(double a, double b) { return normalize_angle(a - b); }

struct Pose2 {
    Vec2 translation;
    double rotation = 0.0;  // (-pi, pi]

    Vec2 apply(Vec2 p) const { return translation + rotate(p, rotation); }
    static Pose2 identity() { return {}; }
};

struct Disk {
    Vec2 center;
    double radius = 0.0;
};

// Counter-clockwise, strictly convex, no repeated vertices.
struct ConvexPolygon {
    std::vector<Vec2> vertices;

    bool is_valid() const;
    void validate() const;  // throws InvalidGeometryError
    Vec2 centroid() const;  // area-weighted
    double circumradius_about(Vec2 p) const;
    // Boundary counts as inside.
    bool contains(Vec2 p) const;
};

enum class EdgeKind { Move, Wait, Dock };

// One robot's motion over a single unit time step, traversed at constant velocity.
struct MotionEdge {
    int robot = -1;
    Vec2 from;
    Vec2 to;
    EdgeKind kind = EdgeKind::Move;

    double length() const { return distance(from, to); }
};

struct Penetration {
    double depth = 0.0;
    Vec2 direction;  // unit vector pushing the disk out of the polygon
};

// Continuous-time conflict between two disks of radius r sliding along their
// edges over the same unit step. True iff the moving centers come strictly
// closer than 2r (closed-form minimum of the quadratic relative distance).
bool edge_edge_conflict(const MotionEdge& e1, const MotionEdge& e2, double r);

// Conflict between a moving disk (along e) and a stationary disk centered at q,
// both of radius r. True iff the segment passes strictly closer than 2r to q.
bool edge_state_conflict(const MotionEdge& e, Vec2 q, double r);

// Minimal translation pushing the disk out of the polygon, or nullopt when separated.
std::optional<Penetration> disk_polygon_overlap(const Disk& d, const ConvexPolygon& p);

ConvexPolygon transform_polygon(const Pose2& pose, const ConvexPolygon& p);

double segment_point_distance(Vec2 a, Vec2 b, Vec2 p);
Vec2 closest_point_on_segment(Vec2 a, Vec2 b, Vec2 p);
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Distance from a point to a convex polygon; 0 if inside or on the boundary.
double point_polygon_distance(Vec2 p, const ConvexPolygon& poly);

// Distance from a segment to a convex polygon; 0 on contact or penetration.
double segment_polygon_distance(Vec2 a, Vec2 b, const ConvexPolygon& poly);

// Separating-axis overlap test for convex polygons (shared boundary counts as overlap).
bool polygons_overlap(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace gco
