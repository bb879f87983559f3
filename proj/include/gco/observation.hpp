#pragma once

#include <cstdint>
#include <vector>

#include "gco/geometry.hpp"

namespace gco {

// Square observation window centered on an object, axis-aligned to the world.
// Token coordinates (1..width) anchor to the frame center: token (w/2, w/2)
// maps exactly onto the center. Raster cells sample at half-pixel centers.
struct ObservationFrame {
    Vec2 center;
    double resolution = 0.02;  // meters per pixel
    int width = 64;            // pixels per side, even

    Vec2 token_to_local(int px, int py) const {
        return {(px - width / 2) * resolution, (py - width / 2) * resolution};
    }
    Vec2 pixel_center_local(int ix, int iy) const {
        return {(ix + 0.5 - width / 2) * resolution, (iy + 0.5 - width / 2) * resolution};
    }
    Vec2 pixel_center_world(int ix, int iy) const { return center + pixel_center_local(ix, iy); }

    // Raster cell containing a world point; false when outside the frame.
    bool world_to_pixel(Vec2 p, int& ix, int& iy) const {
        const Vec2 local = p - center;
        ix = static_cast<int>(std::floor(local.x / resolution)) + width / 2;
        iy = static_cast<int>(std::floor(local.y / resolution)) + width / 2;
        return ix >= 0 && ix < width && iy >= 0 && iy < width;
    }
};

struct OccupancyImage {
    int width = 0;
    std::vector<uint8_t> pixels;  // row-major, iy * width + ix

    OccupancyImage() = default;
    explicit OccupancyImage(int w) : width(w), pixels(static_cast<size_t>(w) * w, 0) {}
    uint8_t at(int ix, int iy) const { return pixels[iy * width + ix]; }
    void set(int ix, int iy, uint8_t v) { pixels[iy * width + ix] = v; }
    size_t count() const {
        size_t n = 0;
        for (uint8_t p : pixels) n += p != 0;
        return n;
    }
};

struct Observation {
    OccupancyImage image;
    ObservationFrame frame;

    bool mask_contains(Vec2 world_point) const {
        int ix, iy;
        if (!frame.world_to_pixel(world_point, ix, iy)) return false;
        return image.at(ix, iy) != 0;
    }

    // Mean of occupied pixel centers; frame center when the mask is empty.
    Vec2 mask_centroid() const;
};

}  // namespace gco
