#include "gco/costmap.hpp"

#include <cmath>
#include <queue>

#include "gco/error.hpp"

namespace gco {

GridMap GridMap::build(Vec2 lo, Vec2 hi, double resolution,
                       std::vector<ConvexPolygon> obstacle_polygons, double inflation_radius) {
    if (resolution <= 0.0) throw ValidationError("grid resolution must be > 0");
    if (hi.x <= lo.x || hi.y <= lo.y) throw ValidationError("empty map bounds");
    for (const ConvexPolygon& p : obstacle_polygons) p.validate();

    GridMap m;
    m.origin = lo;
    m.resolution = resolution;
    m.width = static_cast<int>(std::ceil((hi.x - lo.x) / resolution - 1e-9));
    m.height = static_cast<int>(std::ceil((hi.y - lo.y) / resolution - 1e-9));
    m.inflation_radius = inflation_radius;
    m.obstacles = std::move(obstacle_polygons);
    m.occupancy.assign(static_cast<size_t>(m.width) * m.height, 0);

    for (const ConvexPolygon& poly : m.obstacles) {
        // Only rasterize cells near the polygon's bounding box.
        double minx = kInf, miny = kInf, maxx = -kInf, maxy = -kInf;
        for (const Vec2& v : poly.vertices) {
            minx = std::min(minx, v.x);
            maxx = std::max(maxx, v.x);
            miny = std::min(miny, v.y);
            maxy = std::max(maxy, v.y);
        }
        const double pad = inflation_radius + resolution;
        const int x0 = std::max(0, m.cell_x(minx - pad));
        const int x1 = std::min(m.width - 1, m.cell_x(maxx + pad));
        const int y0 = std::max(0, m.cell_y(miny - pad));
        const int y1 = std::min(m.height - 1, m.cell_y(maxy + pad));
        for (int iy = y0; iy <= y1; ++iy)
            for (int ix = x0; ix <= x1; ++ix)
                if (point_polygon_distance(m.cell_center(ix, iy), poly) <= inflation_radius)
                    m.occupancy[iy * m.width + ix] = 1;
    }
    return m;
}

bool GridMap::in_bounds(Vec2 p) const {
    const int ix = cell_x(p.x), iy = cell_y(p.y);
    return ix >= 0 && ix < width && iy >= 0 && iy < height;
}

bool GridMap::occupied_at(Vec2 p) const {
    if (!in_bounds(p)) throw OutOfBoundsError("position outside map bounds");
    return occupied(cell_x(p.x), cell_y(p.y));
}

DistanceField build_distance_field(const GridMap& map, Vec2 goal, bool euclidean) {
    DistanceField f;
    f.goal = goal;
    f.euclidean = euclidean;
    f.origin = map.origin;
    f.resolution = map.resolution;
    f.width = map.width;
    f.height = map.height;
    if (!map.in_bounds(goal)) throw OutOfBoundsError("goal outside map bounds");
    if (map.occupied_at(goal)) throw ValidationError("invalid goal: goal cell is occupied");
    if (euclidean) return f;

    f.cost.assign(static_cast<size_t>(f.width) * f.height, kInf);
    using Item = std::pair<double, int>;  // (cost, cell index)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    const int goal_idx = map.cell_index(goal);
    f.cost[goal_idx] = 0.0;
    open.emplace(0.0, goal_idx);

    const double straight = map.resolution;
    const double diagonal = map.resolution * std::sqrt(2.0);
    while (!open.empty()) {
        auto [c, idx] = open.top();
        open.pop();
        if (c > f.cost[idx]) continue;
        const int ix = idx % f.width, iy = idx / f.width;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = ix + dx, ny = iy + dy;
                if (nx < 0 || nx >= f.width || ny < 0 || ny >= f.height) continue;
                if (map.occupied(nx, ny)) continue;
                const double step = (dx != 0 && dy != 0) ? diagonal : straight;
                const double nc = c + step;
                const int nidx = ny * f.width + nx;
                if (nc < f.cost[nidx]) {
                    f.cost[nidx] = nc;
                    open.emplace(nc, nidx);
                }
            }
        }
    }
    return f;
}

double DistanceField::dist(Vec2 pos) const {
    const int ix = static_cast<int>(std::floor((pos.x - origin.x) / resolution));
    const int iy = static_cast<int>(std::floor((pos.y - origin.y) / resolution));
    if (ix < 0 || ix >= width || iy < 0 || iy >= height)
        throw OutOfBoundsError("dist: position outside map bounds");
    if (euclidean) return distance(pos, goal);

    const int gx = static_cast<int>(std::floor((goal.x - origin.x) / resolution));
    const int gy = static_cast<int>(std::floor((goal.y - origin.y) / resolution));
    if (ix == gx && iy == gy) return distance(pos, goal);

    const double c = cost[iy * width + ix];
    if (c == kInf) return kInf;

    // Within a two-cell halo of the goal the cell-center remainder is too
    // coarse to rank approach edges or trigger docking, so fall back to the
    // exact distance when the straight segment to the goal crosses only
    // reachable cells.
    const double straight = distance(pos, goal);
    if (straight <= 2.0 * resolution) {
        bool clear = true;
        const int samples = 4;
        for (int k = 1; k < samples && clear; ++k) {
            const Vec2 p = pos + (goal - pos) * (static_cast<double>(k) / samples);
            const int px = static_cast<int>(std::floor((p.x - origin.x) / resolution));
            const int py = static_cast<int>(std::floor((p.y - origin.y) / resolution));
            clear = px >= 0 && px < width && py >= 0 && py < height &&
                    cost[py * width + px] < kInf;
        }
        if (clear) return straight;
    }

    const Vec2 center{origin.x + (ix + 0.5) * resolution, origin.y + (iy + 0.5) * resolution};
    return c + distance(pos, center);
}

}  // namespace gco
