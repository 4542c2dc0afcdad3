#pragma once

#include <cstdint>
#include <vector>

#include "mapgen/geometry.hpp"

namespace mapgen::raster {

/// Regular occupancy grid. Cell (ix, iy) samples the world point
/// origin + (ix + 0.5, iy + 0.5) * cell (center sampling).
struct GridSpec {
    geom::Point origin;
    double cell = 0.25;
    int width = 0;
    int height = 0;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
};

class BitGrid {
public:
    BitGrid() = default;
    explicit BitGrid(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    int width() const { return spec_.width; }
    int height() const { return spec_.height; }
    int words_per_row() const { return words_per_row_; }

    bool get(int x, int y) const {
        return (row(y)[x >> 6] >> (x & 63)) & 1u;
    }
    void set(int x, int y) { row(y)[x >> 6] |= std::uint64_t{1} << (x & 63); }

    std::uint64_t* row(int y) { return words_.data() + static_cast<std::size_t>(y) * words_per_row_; }
    const std::uint64_t* row(int y) const {
        return words_.data() + static_cast<std::size_t>(y) * words_per_row_;
    }

    std::int64_t popcount() const;
    double occupied_area() const;

    /// Clears bits beyond `width` in the last word of each row.
    void mask_tail();

    friend bool operator==(const BitGrid& a, const BitGrid& b) {
        return a.spec_.width == b.spec_.width && a.spec_.height == b.spec_.height &&
               a.words_ == b.words_;
    }

private:
    GridSpec spec_;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Discretized disc: offsets (dx, dy) with dx² + dy² <= disc_radius_cells_sq.
/// Shared by the fast kernels and the serial reference so both see the same
/// structuring element.
std::int64_t disc_radius_cells_sq(double radius_m, double cell);

inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 28;

/// Grid covering `env` expanded by `margin_m` on every side.
/// Throws Error{Capacity} when the cell count exceeds `max_cells`.
GridSpec grid_for(const geom::Envelope& env, double cell, double margin_m,
                  std::size_t max_cells = kDefaultMaxCells);

/// Even-odd scanline fill at cell centers. Rows are filled in parallel.
BitGrid rasterize(const std::vector<geom::Polygon>& polys, const GridSpec& spec);

// Word-level kernels, OpenMP-parallel over rows (mapgen::max_threads()).
// Output is bit-identical for any thread count.
BitGrid dilate(const BitGrid& in, double radius_m);
BitGrid erode(const BitGrid& in, double radius_m);

/// Connected components of occupied cells, 8-connectivity.
int component_count(const BitGrid& g);

namespace reference {

// Naive per-cell serial kernels; the independent implementation the fast
// kernels are tested against.
BitGrid dilate(const BitGrid& in, double radius_m);
BitGrid erode(const BitGrid& in, double radius_m);

}  // namespace reference

}  // namespace mapgen::raster
