#pragma once

#include <cstdint>
#include <vector>

#include "mapgen/error.hpp"

namespace mapgen::geom {

/// Planar coordinates in projected meters. No CRS handling anywhere.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Closed ring; the first vertex is not repeated at the end.
/// Canonical form: exterior rings counter-clockwise, holes clockwise.
struct Ring {
    std::vector<Point> vertices;
};

struct Polygon {
    Ring exterior;
    std::vector<Ring> holes;
};

struct MultiPolygon {
    std::vector<Polygon> parts;

    bool empty() const { return parts.empty(); }
};

struct Envelope {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    void expand(double d) { min_x -= d; min_y -= d; max_x += d; max_y += d; }
};

/// Minimal-area enclosing rectangle. `angle_deg` is the orientation of the
/// long (width) axis in [0, 180); width >= height.
struct MbrResult {
    double angle_deg = 0.0;
    double width = 0.0;
    double height = 0.0;
    Polygon rect;
};

// ---------------------------------------------------------------------------
// Construction and validity
// ---------------------------------------------------------------------------

double ring_signed_area(const Ring& r);
double ring_perimeter(const Ring& r);

/// Strips repeated closing vertex and consecutive duplicates, then orients
/// exterior CCW / holes CW. Every constructor path goes through here.
void normalize(Polygon& p);
void normalize(MultiPolygon& g);

Polygon make_polygon(std::vector<Point> exterior, std::vector<std::vector<Point>> holes = {});

/// Full invariant check (>= 3 vertices, finite coords, no self-intersection,
/// holes inside exterior). Throws Error{InvalidGeometry} on violation.
void validate(const Ring& r);
void validate(const Polygon& p);
void validate(const MultiPolygon& g);
bool is_valid(const Polygon& p);

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

/// Exterior area minus hole areas. Validates its input.
double area(const Polygon& p);
double area(const MultiPolygon& g);
double perimeter(const Polygon& p);
Point centroid(const Polygon& p);
Envelope envelope(const Polygon& p);
Envelope envelope(const MultiPolygon& g);

// ---------------------------------------------------------------------------
// Kernel operations
// ---------------------------------------------------------------------------

/// Minkowski dilation (d > 0) or erosion (d < 0) with a disc of radius |d|.
/// Round joins are approximated with `arc_segments` segments per quadrant.
/// d = 0 returns the input. The result may gain or lose parts; it may be empty.
MultiPolygon signed_buffer(const MultiPolygon& g, double d, int arc_segments = 8);

MultiPolygon boolean_union(const std::vector<MultiPolygon>& gs);
MultiPolygon union_pair(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon intersection(const MultiPolygon& a, const MultiPolygon& b);
MultiPolygon difference(const MultiPolygon& a, const MultiPolygon& b);
bool intersects(const Polygon& a, const Polygon& b);
double intersection_area(const Polygon& a, const Polygon& b);

Polygon convex_hull(const Polygon& p);

MbrResult min_bounding_rectangle(const Polygon& p);

/// 0 when boundaries touch or interiors overlap, else the minimum distance
/// over boundary segment pairs.
double min_separation(const Polygon& a, const Polygon& b);

/// Douglas-Peucker on a closed ring. Vertices of the result are a subset of
/// the input. If the simplified ring would self-intersect or drop below 3
/// vertices, the tolerance is halved until the result is valid.
Ring simplify_ring(const Ring& r, double tolerance);

/// Chaikin corner cutting; `iterations` in [0, 5].
Ring smooth_ring(const Ring& r, int iterations);

// ---------------------------------------------------------------------------
// Rigid transforms (agent actions build on these)
// ---------------------------------------------------------------------------

Polygon translated(const Polygon& p, double dx, double dy);
Polygon scaled_about(const Polygon& p, Point center, double factor);
Polygon rotated_about(const Polygon& p, Point center, double angle_rad);

/// Fraction of `p`'s area covered by `container` (1 when fully inside).
double covered_fraction(const Polygon& p, const Polygon& container);

/// Sliver policy: parts and holes below this area are discarded by the
/// kernel operations.
inline constexpr double kMinRingArea = 1e-6;

/// Chord sagitta of the round-join approximation: the Hausdorff gap between
/// the ideal disc of radius d and its inscribed polygon.
double arc_tolerance(double d, int arc_segments);

}  // namespace mapgen::geom
