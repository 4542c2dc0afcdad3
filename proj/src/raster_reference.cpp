#include <cmath>

#include "mapgen/raster.hpp"

// Definitional per-cell kernels. Slow on purpose: this is the reference the
// word-level kernels are verified against, so it stays as close to the
// textbook set definitions as possible.

namespace mapgen::raster::reference {

namespace {

std::int64_t isqrt_floor(std::int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

}  // namespace

BitGrid dilate(const BitGrid& in, double radius_m) {
    const std::int64_t r2 = disc_radius_cells_sq(radius_m, in.spec().cell);
    const int radius = static_cast<int>(isqrt_floor(r2));
    BitGrid out(in.spec());
    const int w = in.width(), h = in.height();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool hit = false;
            for (int dy = -radius; dy <= radius && !hit; ++dy) {
                const int ny = y + dy;
                if (ny < 0 || ny >= h) continue;
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (static_cast<std::int64_t>(dx) * dx + static_cast<std::int64_t>(dy) * dy > r2) continue;
                    const int nx = x + dx;
                    if (nx < 0 || nx >= w) continue;
                    if (in.get(nx, ny)) {
                        hit = true;
                        break;
                    }
                }
            }
            if (hit) out.set(x, y);
        }
    }
    return out;
}

BitGrid erode(const BitGrid& in, double radius_m) {
    const std::int64_t r2 = disc_radius_cells_sq(radius_m, in.spec().cell);
    const int radius = static_cast<int>(isqrt_floor(r2));
    BitGrid out(in.spec());
    const int w = in.width(), h = in.height();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!in.get(x, y)) continue;
            bool full = true;
            for (int dy = -radius; dy <= radius && full; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (static_cast<std::int64_t>(dx) * dx + static_cast<std::int64_t>(dy) * dy > r2) continue;
                    const int nx = x + dx, ny = y + dy;
                    // outside the grid counts as unoccupied
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h || !in.get(nx, ny)) {
                        full = false;
                        break;
                    }
                }
            }
            if (full) out.set(x, y);
        }
    }
    return out;
}

}  // namespace mapgen::raster::reference
