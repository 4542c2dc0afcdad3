#include "mapgen/raster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mapgen/parallel.hpp"

namespace mapgen::raster {

BitGrid::BitGrid(const GridSpec& spec) : spec_(spec) {
    words_per_row_ = (spec.width + 63) / 64;
    words_.assign(static_cast<std::size_t>(words_per_row_) * spec.height, 0u);
}

std::int64_t BitGrid::popcount() const {
    std::int64_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
}

double BitGrid::occupied_area() const {
    return static_cast<double>(popcount()) * spec_.cell * spec_.cell;
}

void BitGrid::mask_tail() {
    const int tail_bits = spec_.width & 63;
    if (tail_bits == 0 || words_per_row_ == 0) return;
    const std::uint64_t mask = (std::uint64_t{1} << tail_bits) - 1;
    for (int y = 0; y < spec_.height; ++y) {
        row(y)[words_per_row_ - 1] &= mask;
    }
}

std::int64_t disc_radius_cells_sq(double radius_m, double cell) {
    const double r_cells = radius_m / cell;
    return static_cast<std::int64_t>(std::floor(r_cells * r_cells + 1e-9));
}

GridSpec grid_for(const geom::Envelope& env, double cell, double margin_m,
                  std::size_t max_cells) {
    if (cell <= 0.0) throw Error(ErrorKind::Config, "raster cell size must be > 0");
    GridSpec spec;
    spec.cell = cell;
    spec.origin = {env.min_x - margin_m, env.min_y - margin_m};
    spec.width = static_cast<int>(std::ceil((env.width() + 2.0 * margin_m) / cell)) + 1;
    spec.height = static_cast<int>(std::ceil((env.height() + 2.0 * margin_m) / cell)) + 1;
    if (spec.cell_count() > max_cells) {
        std::ostringstream os;
        os << "raster grid of " << spec.width << "x" << spec.height
           << " cells exceeds the budget of " << max_cells;
        throw Error(ErrorKind::Capacity, os.str());
    }
    return spec;
}

BitGrid rasterize(const std::vector<geom::Polygon>& polys, const GridSpec& spec) {
    BitGrid grid(spec);

    struct Edge {
        double x0, y0, x1, y1;
    };
    std::vector<Edge> edges;
    for (const geom::Polygon& p : polys) {
        auto add_ring = [&](const geom::Ring& r) {
            const std::size_t n = r.vertices.size();
            for (std::size_t i = 0; i < n; ++i) {
                const geom::Point& a = r.vertices[i];
                const geom::Point& b = r.vertices[(i + 1) % n];
                if (a.y != b.y) edges.push_back({a.x, a.y, b.x, b.y});
            }
        };
        add_ring(p.exterior);
        for (const geom::Ring& h : p.holes) add_ring(h);
    }
    if (edges.empty()) return grid;

#pragma omp parallel for schedule(static) num_threads(mapgen::max_threads())
    for (int y = 0; y < spec.height; ++y) {
        const double yc = spec.origin.y + (y + 0.5) * spec.cell;
        std::vector<double> xs;
        for (const Edge& e : edges) {
            // half-open rule: count the lower endpoint, skip the upper
            const bool cross = (e.y0 <= yc && yc < e.y1) || (e.y1 <= yc && yc < e.y0);
            if (!cross) continue;
            xs.push_back(e.x0 + (yc - e.y0) * (e.x1 - e.x0) / (e.y1 - e.y0));
        }
        if (xs.empty()) continue;
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const int lo = std::max(0, static_cast<int>(std::ceil((xs[k] - spec.origin.x) / spec.cell - 0.5)));
            const int hi = std::min(spec.width - 1,
                                    static_cast<int>(std::floor((xs[k + 1] - spec.origin.x) / spec.cell - 0.5)));
            for (int x = lo; x <= hi; ++x) grid.set(x, y);
        }
    }
    return grid;
}

int component_count(const BitGrid& g) {
    const int w = g.width(), h = g.height();
    std::vector<char> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::pair<int, int>> stack;
    int components = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!g.get(x, y) || visited[static_cast<std::size_t>(y) * w + x]) continue;
            ++components;
            stack.push_back({x, y});
            visited[static_cast<std::size_t>(y) * w + x] = 1;
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        auto& seen = visited[static_cast<std::size_t>(ny) * w + nx];
                        if (seen || !g.get(nx, ny)) continue;
                        seen = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }
    }
    return components;
}

}  // namespace mapgen::raster
