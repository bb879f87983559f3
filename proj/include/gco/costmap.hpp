#pragma once

#include <limits>
#include <vector>

#include "gco/geometry.hpp"

namespace gco {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Boolean occupancy grid over an axis-aligned workspace. Obstacle polygons are
// inflated by the robot radius at build time: a cell is occupied iff its center
// lies within the inflation radius of any obstacle.
struct GridMap {
    Vec2 origin;               // world position of cell (0,0)'s lower-left corner
    double resolution = 0.05;  // meters per cell
    int width = 0;             // cells
    int height = 0;
    double inflation_radius = 0.0;
    std::vector<uint8_t> occupancy;          // row-major, y * width + x
    std::vector<ConvexPolygon> obstacles;    // original (uninflated) polygons

    static GridMap build(Vec2 lo, Vec2 hi, double resolution,
                         std::vector<ConvexPolygon> obstacle_polygons, double inflation_radius);

    bool in_bounds(Vec2 p) const;
    int cell_x(double wx) const { return static_cast<int>(std::floor((wx - origin.x) / resolution)); }
    int cell_y(double wy) const { return static_cast<int>(std::floor((wy - origin.y) / resolution)); }
    int cell_index(Vec2 p) const { return cell_y(p.y) * width + cell_x(p.x); }
    Vec2 cell_center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * resolution, origin.y + (iy + 0.5) * resolution};
    }
    bool occupied(int ix, int iy) const { return occupancy[iy * width + ix] != 0; }
    bool occupied_at(Vec2 p) const;  // throws OutOfBoundsError outside the map
    bool empty() const { return obstacles.empty(); }
    double diameter() const { return std::hypot(width * resolution, height * resolution); }
};

// Shortest-path cost to one goal from every free cell (8-connected Dijkstra:
// straight steps cost one resolution, diagonals sqrt(2) resolutions). A field
// built in euclidean mode skips the grid entirely and measures straight-line
// distance, which is exact on obstacle-free maps.
struct DistanceField {
    Vec2 goal;
    bool euclidean = false;
    Vec2 origin;
    double resolution = 0.05;
    int width = 0;
    int height = 0;
    std::vector<double> cost;  // kInf where unreachable or occupied

    // Cost of the containing cell plus the straight-line remainder to the cell
    // center. Inside the goal cell, and within a two-cell halo of the goal with
    // a clear line of sight, the exact straight-line distance is used instead;
    // the cell-center remainder cannot rank approach edges that close in.
    double dist(Vec2 pos) const;
};

DistanceField build_distance_field(const GridMap& map, Vec2 goal, bool euclidean = false);

}  // namespace gco
