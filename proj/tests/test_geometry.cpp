#include "gco/geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "gco/costmap.hpp"
#include "gco/error.hpp"
#include "gco/rng.hpp"

using namespace gco;

namespace {

// Independent oracle: densely sample the relative motion in time and take the
// smallest center separation.
double dense_min_separation(const MotionEdge& e1, const MotionEdge& e2, int samples = 10000) {
    double best = kInf;
    for (int k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) / samples;
        const Vec2 p1 = e1.from + (e1.to - e1.from) * t;
        const Vec2 p2 = e2.from + (e2.to - e2.from) * t;
        best = std::min(best, distance(p1, p2));
    }
    return best;
}

constexpr double kInfNorm = std::numeric_limits<double>::infinity();

ConvexPolygon unit_square() {
    return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
}

MotionEdge edge(Vec2 from, Vec2 to) {
    return {0, from, to, EdgeKind::Move};
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("edge_edge_conflict on head-on swap") {
    // Centers coincide at t = 0.5; the dense oracle agrees.
    const MotionEdge e1 = edge({0, 0}, {1, 0});
    const MotionEdge e2 = edge({1, 0}, {0, 0});
    CHECK(edge_edge_conflict(e1, e2, 0.1));
    CHECK(dense_min_separation(e1, e2) < 0.2);
    CHECK(dense_min_separation(e1, e2) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("edge_edge_conflict on static separated waits") {
    const MotionEdge e1 = edge({0, 0}, {0, 0});
    const MotionEdge e2 = edge({1, 0}, {1, 0});
    CHECK_FALSE(edge_edge_conflict(e1, e2, 0.4));
}

TEST_CASE("edge_edge_conflict on parallel motion keeps constant separation") {
    const MotionEdge e1 = edge({0, 0}, {0.05, 0});
    const MotionEdge e2 = edge({0, 0.12}, {0.05, 0.12});
    CHECK_FALSE(edge_edge_conflict(e1, e2, 0.05));
    CHECK(dense_min_separation(e1, e2) == doctest::Approx(0.12));
}

TEST_CASE("edge_edge_conflict is symmetric and matches dense sampling") {
    CounterRng rng(42);
    const double r = 0.1;
    for (int trial = 0; trial < 300; ++trial) {
        auto coord = [&](int i) { return rng.uniform(trial, i) * 0.6; };
        const MotionEdge e1 = edge({coord(0), coord(1)}, {coord(2), coord(3)});
        const MotionEdge e2 = edge({coord(4), coord(5)}, {coord(6), coord(7)});
        const bool conflict = edge_edge_conflict(e1, e2, r);
        CHECK(conflict == edge_edge_conflict(e2, e1, r));
        const double sep = dense_min_separation(e1, e2);
        if (conflict)
            CHECK(sep < 2 * r);
        else
            CHECK(sep >= 2 * r - 1e-9);
    }
}

TEST_CASE("edge_edge_conflict rejects non-finite input") {
    CHECK_THROWS_AS(edge_edge_conflict(edge({0, 0}, {kInfNorm, 0}), edge({1, 0}, {1, 0}), 0.1),
                    InvalidGeometryError);
    CHECK_THROWS_AS(edge_edge_conflict(edge({0, 0}, {1, 0}), edge({std::nan(""), 0}, {1, 0}), 0.1),
                    InvalidGeometryError);
}

TEST_CASE("edge_state_conflict against stationary disks") {
    // Point-segment distance 0.05 < 2 * 0.05.
    CHECK(edge_state_conflict(edge({0, 0}, {0.1, 0}), {0.05, 0.05}, 0.05));
    // Distance 0.4 >= 0.2.
    CHECK_FALSE(edge_state_conflict(edge({0, 0}, {0.1, 0}), {0.5, 0}, 0.1));
    // Degenerate wait edge reduces to the point-point check: 0.19 < 0.2.
    CHECK(edge_state_conflict(edge({0, 0}, {0, 0}), {0.19, 0}, 0.1));
}

TEST_CASE("disk_polygon_overlap pushes an embedded disk through the nearest face") {
    const auto pen = disk_polygon_overlap({{0.5, 0.5}, 0.1}, unit_square());
    REQUIRE(pen.has_value());
    CHECK(pen->depth == doctest::Approx(0.6));
    CHECK(norm(pen->direction) == doctest::Approx(1.0));
    // All faces tie at 0.5; whichever wins, the direction must be axis-aligned.
    CHECK(std::abs(std::abs(pen->direction.x) + std::abs(pen->direction.y) - 1.0) < 1e-12);

    // Per-face oracle: depth equals radius plus the smallest interior distance.
    double interior = kInf;
    interior = std::min({0.5, 0.5, 0.5, 0.5});
    CHECK(pen->depth == doctest::Approx(0.1 + interior));
}

TEST_CASE("disk_polygon_overlap separated and shallow cases") {
    CHECK_FALSE(disk_polygon_overlap({{5, 5}, 0.1}, unit_square()).has_value());

    const auto pen = disk_polygon_overlap({{1.05, 0.5}, 0.1}, unit_square());
    REQUIRE(pen.has_value());
    CHECK(pen->depth == doctest::Approx(0.05));
    CHECK(pen->direction.x == doctest::Approx(1.0));
    CHECK(pen->direction.y == doctest::Approx(0.0));
}

TEST_CASE("disk_polygon_overlap is continuous at the boundary") {
    // Exactly at distance r: no overlap reported.
    CHECK_FALSE(disk_polygon_overlap({{1.1, 0.5}, 0.1}, unit_square()).has_value());
    // Within r - eps: depth reported as roughly eps.
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        const auto pen = disk_polygon_overlap({{1.1 - eps, 0.5}, 0.1}, unit_square());
        REQUIRE(pen.has_value());
        CHECK(pen->depth == doctest::Approx(eps).epsilon(1e-6));
    }
}

TEST_CASE("disk_polygon_overlap rejects degenerate polygons") {
    ConvexPolygon line{{{0, 0}, {1, 0}}};
    CHECK_THROWS_AS(disk_polygon_overlap({{0, 0}, 0.1}, line), InvalidGeometryError);
    ConvexPolygon clockwise{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
    CHECK_THROWS_AS(disk_polygon_overlap({{0, 0}, 0.1}, clockwise), InvalidGeometryError);
}

TEST_CASE("transform_polygon rotates then translates") {
    const ConvexPolygon sq = unit_square();

    const ConvexPolygon same = transform_polygon(Pose2::identity(), sq);
    for (size_t i = 0; i < 4; ++i) CHECK(same.vertices[i] == sq.vertices[i]);

    const ConvexPolygon moved = transform_polygon({{1, 0}, 0.0}, sq);
    CHECK(moved.vertices[0] == Vec2{1, 0});
    CHECK(moved.vertices[2] == Vec2{2, 1});

    const ConvexPolygon rot = transform_polygon({{0, 0}, M_PI / 2}, sq);
    CHECK(rot.vertices[0].x == doctest::Approx(0.0));
    CHECK(rot.vertices[0].y == doctest::Approx(0.0));
    CHECK(rot.vertices[1].x == doctest::Approx(0.0));
    CHECK(rot.vertices[1].y == doctest::Approx(1.0));
    CHECK(rot.is_valid());  // orientation preserved
}

TEST_CASE("normalize_angle wraps into (-pi, pi]") {
    CHECK(normalize_angle(M_PI) == doctest::Approx(M_PI));
    CHECK(normalize_angle(-M_PI) == doctest::Approx(M_PI));
    CHECK(normalize_angle(3 * M_PI) == doctest::Approx(M_PI));
    CHECK(normalize_angle(0.3 - 2 * M_PI) == doctest::Approx(0.3));
}

TEST_CASE("polygons_overlap via separating axes") {
    const ConvexPolygon a = unit_square();
    ConvexPolygon b{{{2, 0}, {3, 0}, {3, 1}, {2, 1}}};
    CHECK_FALSE(polygons_overlap(a, b));
    ConvexPolygon c{{{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}}};
    CHECK(polygons_overlap(a, c));
}

}  // TEST_SUITE
