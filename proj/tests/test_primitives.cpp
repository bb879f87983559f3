#include "gco/primitives.hpp"

#include <cmath>

#include "doctest.h"
#include "gco/error.hpp"

using namespace gco;

namespace {

GridMap empty_map() {
    return GridMap::build({0, 0}, {2.0, 2.0}, 0.05, {}, 0.1);
}

GridMap side_wall_map() {
    // Wall hugging x = 1.0 on the right of the probe configuration.
    ConvexPolygon wall{{{1.02, 0.0}, {1.4, 0.0}, {1.4, 2.0}, {1.02, 2.0}}};
    return GridMap::build({0, 0}, {2.0, 2.0}, 0.05, {wall}, 0.1);
}

}  // namespace

TEST_SUITE("primitives") {

TEST_CASE("best edge points at the goal") {
    const GridMap map = empty_map();
    const DistanceField f = build_distance_field(map, {1.9, 0.9}, true);
    const auto edges = generate_motion_edges(0, {0.9, 0.9}, f, map);
    REQUIRE(!edges.empty());
    CHECK(edges[0].kind == EdgeKind::Move);
    CHECK(edges[0].to.x == doctest::Approx(0.95));
    CHECK(edges[0].to.y == doctest::Approx(0.9));
    // Euclidean oracle: scores must be sorted ascending, wait last.
    for (size_t i = 0; i + 2 < edges.size(); ++i)
        CHECK(f.dist(edges[i].to) <= f.dist(edges[i + 1].to) + 1e-12);
    CHECK(edges.back().kind == EdgeKind::Wait);
    CHECK(edges.back().from == edges.back().to);
}

TEST_CASE("near-goal configurations get a dock edge that ranks first") {
    const GridMap map = empty_map();
    const Vec2 goal{1.0, 1.0};
    const DistanceField f = build_distance_field(map, goal, true);
    const auto edges = generate_motion_edges(0, {0.97, 1.0}, f, map);
    REQUIRE(!edges.empty());
    CHECK(edges[0].kind == EdgeKind::Dock);
    CHECK(edges[0].to == goal);
    CHECK(edges[0].length() <= 0.05);
}

TEST_CASE("edges sweeping into obstacles are pruned") {
    const GridMap map = side_wall_map();
    const DistanceField f = build_distance_field(map, {0.5, 1.9});
    // Configuration 0.1 m left of the inflated wall face: +x motion would
    // bring the swept disk within the robot radius of the wall.
    const auto edges = generate_motion_edges(0, {0.875, 0.875}, f, map);
    int moves = 0;
    for (const MotionEdge& e : edges) {
        if (e.kind != EdgeKind::Move) continue;
        ++moves;
        CHECK(e.to.x < 0.9);  // nothing toward the wall
        // Swept-disk oracle: sample along the edge and measure clearance.
        for (int k = 0; k <= 100; ++k) {
            const Vec2 p = e.from + (e.to - e.from) * (k / 100.0);
            for (const ConvexPolygon& poly : map.obstacles)
                CHECK(point_polygon_distance(p, poly) >= map.inflation_radius);
        }
    }
    CHECK(moves == 5);  // +x, and both +-45 degree neighbors gone
}

TEST_CASE("a wall just past one primitive prunes exactly the facing edge") {
    // Finer cells keep the diagonal endpoints' cells free while the +x
    // endpoint sits within the robot radius of the wall.
    // Face at 0.14 from the configuration: the +x endpoint ends up 0.09 away
    // (pruned), the 45-degree endpoints 0.1046 away (kept).
    ConvexPolygon wall{{{1.1525, 0.0}, {1.5, 0.0}, {1.5, 2.0}, {1.1525, 2.0}}};
    const GridMap map = GridMap::build({0, 0}, {2.0, 2.0}, 0.025, {wall}, 0.1);
    const Vec2 config{1.0 + 0.0125, 1.0 + 0.0125};  // a cell center
    const DistanceField f = build_distance_field(map, {0.5, 1.9});
    const auto edges = generate_motion_edges(0, config, f, map);
    int moves = 0;
    for (const MotionEdge& e : edges)
        if (e.kind == EdgeKind::Move) {
            ++moves;
            CHECK(e.to.x < config.x + 0.05);  // the straight +x edge is gone
        }
    CHECK(moves == 7);
}

TEST_CASE("generation is deterministic") {
    const GridMap map = empty_map();
    const DistanceField f = build_distance_field(map, {1.5, 1.5}, true);
    const auto a = generate_motion_edges(7, {0.4, 0.4}, f, map);
    const auto b = generate_motion_edges(7, {0.4, 0.4}, f, map);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].from == b[i].from);
        CHECK(a[i].to == b[i].to);
        CHECK(a[i].kind == b[i].kind);
        CHECK(a[i].robot == 7);
    }
}

TEST_CASE("move edges have the configured primitive length") {
    const GridMap map = empty_map();
    const DistanceField f = build_distance_field(map, {1.5, 1.5}, true);
    PrimitiveConfig cfg;
    cfg.length = 0.08;
    const auto edges = generate_motion_edges(0, {0.5, 0.5}, f, map, cfg);
    int moves = 0;
    for (const MotionEdge& e : edges)
        if (e.kind == EdgeKind::Move) {
            CHECK(e.length() == doctest::Approx(0.08).epsilon(1e-12));
            ++moves;
        }
    CHECK(moves == 8);
}

TEST_CASE("occupied configurations are rejected") {
    const GridMap map = side_wall_map();
    const DistanceField f = build_distance_field(map, {0.5, 1.9});
    CHECK_THROWS_AS(generate_motion_edges(0, {1.1, 0.5}, f, map), ValidationError);
}

}  // TEST_SUITE
