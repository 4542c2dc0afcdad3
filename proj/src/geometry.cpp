#include "mapgen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "mapgen/parallel.hpp"

namespace bg = boost::geometry;

namespace mapgen::geom {

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BMulti = bg::model::multi_polygon<BPolygon>;

BPolygon to_boost(const Polygon& p) {
    BPolygon out;
    out.outer().reserve(p.exterior.vertices.size() + 1);
    for (const Point& v : p.exterior.vertices) out.outer().emplace_back(v.x, v.y);
    if (!p.exterior.vertices.empty()) {
        out.outer().emplace_back(p.exterior.vertices.front().x, p.exterior.vertices.front().y);
    }
    out.inners().resize(p.holes.size());
    for (std::size_t h = 0; h < p.holes.size(); ++h) {
        auto& inner = out.inners()[h];
        inner.reserve(p.holes[h].vertices.size() + 1);
        for (const Point& v : p.holes[h].vertices) inner.emplace_back(v.x, v.y);
        if (!p.holes[h].vertices.empty()) {
            inner.emplace_back(p.holes[h].vertices.front().x, p.holes[h].vertices.front().y);
        }
    }
    return out;
}

BMulti to_boost(const MultiPolygon& g) {
    BMulti out;
    out.reserve(g.parts.size());
    for (const Polygon& p : g.parts) out.push_back(to_boost(p));
    return out;
}

Ring ring_from_boost(const BPolygon::ring_type& r) {
    Ring out;
    out.vertices.reserve(r.size());
    for (const BPoint& v : r) out.vertices.push_back({bg::get<0>(v), bg::get<1>(v)});
    return out;
}

Polygon from_boost(const BPolygon& p) {
    Polygon out;
    out.exterior = ring_from_boost(p.outer());
    out.holes.reserve(p.inners().size());
    for (const auto& inner : p.inners()) out.holes.push_back(ring_from_boost(inner));
    normalize(out);
    return out;
}

bool part_order(const Polygon& a, const Polygon& b) {
    const Envelope ea = envelope(a), eb = envelope(b);
    if (ea.min_x != eb.min_x) return ea.min_x < eb.min_x;
    if (ea.min_y != eb.min_y) return ea.min_y < eb.min_y;
    if (ea.max_x != eb.max_x) return ea.max_x < eb.max_x;
    return ea.max_y < eb.max_y;
}

/// Drops sliver rings/parts, normalizes orientation, sorts parts canonically.
MultiPolygon sanitize(const BMulti& g) {
    MultiPolygon out;
    for (const BPolygon& bp : g) {
        Polygon p = from_boost(bp);
        if (p.exterior.vertices.size() < 3) continue;
        if (std::abs(ring_signed_area(p.exterior)) < kMinRingArea) continue;
        std::erase_if(p.holes, [](const Ring& h) {
            return h.vertices.size() < 3 || std::abs(ring_signed_area(h)) < kMinRingArea;
        });
        out.parts.push_back(std::move(p));
    }
    std::sort(out.parts.begin(), out.parts.end(), part_order);
    return out;
}

BMulti union_range(std::vector<BMulti>& items, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(items[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    BMulti left = union_range(items, lo, mid);
    BMulti right = union_range(items, mid, hi);
    BMulti merged;
    bg::union_(left, right, merged);
    return merged;
}

[[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::InvalidGeometry, what);
}

void check_finite(const Ring& r) {
    for (const Point& v : r.vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) fail("non-finite coordinate");
    }
}

double seg_seg_distance(Point a, Point b, Point c, Point d);

}  // namespace

// ---------------------------------------------------------------------------
// Construction and validity
// ---------------------------------------------------------------------------

double ring_signed_area(const Ring& r) {
    const auto& v = r.vertices;
    const std::size_t n = v.size();
    if (n < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * acc;
}

double ring_perimeter(const Ring& r) {
    const auto& v = r.vertices;
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::hypot(v[(i + 1) % n].x - v[i].x, v[(i + 1) % n].y - v[i].y);
    }
    return acc;
}

namespace {

void strip_duplicates(Ring& r) {
    auto& v = r.vertices;
    while (v.size() > 1 && v.front() == v.back()) v.pop_back();
    std::vector<Point> cleaned;
    cleaned.reserve(v.size());
    for (const Point& p : v) {
        if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
    }
    v = std::move(cleaned);
}

void orient(Ring& r, bool ccw) {
    const double a = ring_signed_area(r);
    if ((ccw && a < 0.0) || (!ccw && a > 0.0)) {
        std::reverse(r.vertices.begin(), r.vertices.end());
    }
}

}  // namespace

void normalize(Polygon& p) {
    strip_duplicates(p.exterior);
    orient(p.exterior, /*ccw=*/true);
    for (Ring& h : p.holes) {
        strip_duplicates(h);
        orient(h, /*ccw=*/false);
    }
}

void normalize(MultiPolygon& g) {
    for (Polygon& p : g.parts) normalize(p);
}

Polygon make_polygon(std::vector<Point> exterior, std::vector<std::vector<Point>> holes) {
    Polygon p;
    p.exterior.vertices = std::move(exterior);
    p.holes.reserve(holes.size());
    for (auto& h : holes) p.holes.push_back(Ring{std::move(h)});
    normalize(p);
    return p;
}

void validate(const Ring& r) {
    if (r.vertices.size() < 3) fail("ring with fewer than 3 vertices");
    check_finite(r);
    if (std::abs(ring_signed_area(r)) <= 0.0) fail("zero-area ring");
    Polygon probe;
    probe.exterior = r;
    orient(probe.exterior, true);
    bg::validity_failure_type failure{};
    if (!bg::is_valid(to_boost(probe), failure)) {
        std::ostringstream os;
        os << "invalid ring: " << bg::validity_failure_type_message(failure);
        fail(os.str());
    }
}

void validate(const Polygon& p) {
    if (p.exterior.vertices.size() < 3) fail("polygon exterior with fewer than 3 vertices");
    check_finite(p.exterior);
    for (const Ring& h : p.holes) {
        if (h.vertices.size() < 3) fail("hole with fewer than 3 vertices");
        check_finite(h);
    }
    if (ring_signed_area(p.exterior) <= 0.0) fail("exterior not counter-clockwise or degenerate");
    for (const Ring& h : p.holes) {
        if (ring_signed_area(h) >= 0.0) fail("hole not clockwise or degenerate");
    }
    bg::validity_failure_type failure{};
    if (!bg::is_valid(to_boost(p), failure)) {
        std::ostringstream os;
        os << "invalid polygon: " << bg::validity_failure_type_message(failure);
        fail(os.str());
    }
}

void validate(const MultiPolygon& g) {
    for (const Polygon& p : g.parts) validate(p);
    if (g.parts.size() > 1) {
        bg::validity_failure_type failure{};
        if (!bg::is_valid(to_boost(g), failure)) {
            std::ostringstream os;
            os << "invalid multipolygon: " << bg::validity_failure_type_message(failure);
            fail(os.str());
        }
    }
}

bool is_valid(const Polygon& p) {
    if (p.exterior.vertices.size() < 3) return false;
    return bg::is_valid(to_boost(p));
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

double area(const Polygon& p) {
    validate(p);
    double a = ring_signed_area(p.exterior);
    for (const Ring& h : p.holes) a += ring_signed_area(h);  // holes are CW, negative
    if (a <= 0.0) fail("non-positive polygon area");
    return a;
}

double area(const MultiPolygon& g) {
    double a = 0.0;
    for (const Polygon& p : g.parts) a += area(p);
    return a;
}

double perimeter(const Polygon& p) {
    double acc = ring_perimeter(p.exterior);
    for (const Ring& h : p.holes) acc += ring_perimeter(h);
    return acc;
}

Point centroid(const Polygon& p) {
    // Area-weighted centroid; holes subtract via their negative signed area.
    double a_total = 0.0, cx = 0.0, cy = 0.0;
    auto accumulate = [&](const Ring& r) {
        const auto& v = r.vertices;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& s = v[i];
            const Point& t = v[(i + 1) % n];
            const double cross = s.x * t.y - t.x * s.y;
            a_total += cross;
            cx += (s.x + t.x) * cross;
            cy += (s.y + t.y) * cross;
        }
    };
    accumulate(p.exterior);
    for (const Ring& h : p.holes) accumulate(h);
    if (std::abs(a_total) < 1e-300) fail("degenerate polygon has no centroid");
    return {cx / (3.0 * a_total), cy / (3.0 * a_total)};
}

Envelope envelope(const Polygon& p) {
    Envelope e{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
               std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point& v : p.exterior.vertices) {
        e.min_x = std::min(e.min_x, v.x);
        e.min_y = std::min(e.min_y, v.y);
        e.max_x = std::max(e.max_x, v.x);
        e.max_y = std::max(e.max_y, v.y);
    }
    return e;
}

Envelope envelope(const MultiPolygon& g) {
    if (g.parts.empty()) return {};
    Envelope e = envelope(g.parts.front());
    for (std::size_t i = 1; i < g.parts.size(); ++i) {
        const Envelope pe = envelope(g.parts[i]);
        e.min_x = std::min(e.min_x, pe.min_x);
        e.min_y = std::min(e.min_y, pe.min_y);
        e.max_x = std::max(e.max_x, pe.max_x);
        e.max_y = std::max(e.max_y, pe.max_y);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Kernel operations
// ---------------------------------------------------------------------------

double arc_tolerance(double d, int arc_segments) {
    return std::abs(d) * (1.0 - std::cos(std::numbers::pi / (4.0 * arc_segments)));
}

MultiPolygon signed_buffer(const MultiPolygon& g, double d, int arc_segments) {
    if (!std::isfinite(d)) fail("buffer distance must be finite");
    if (arc_segments < 4) throw Error(ErrorKind::Config, "arc_segments must be >= 4");
    validate(g);
    if (d == 0.0 || g.parts.empty()) return g;

    const std::size_t points_per_circle = 4 * static_cast<std::size_t>(arc_segments);
    const bg::strategy::buffer::distance_symmetric<double> distance(d);
    const bg::strategy::buffer::join_round join(points_per_circle);
    const bg::strategy::buffer::end_round end(points_per_circle);
    const bg::strategy::buffer::point_circle circle(points_per_circle);
    const bg::strategy::buffer::side_straight side;

    // Dilation distributes over union, erosion over interior-disjoint parts,
    // so each part is buffered independently (parallel) and recombined.
    std::vector<BMulti> buffered(g.parts.size());
#pragma omp parallel for schedule(dynamic) num_threads(mapgen::max_threads())
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(g.parts.size()); ++i) {
        BMulti one;
        one.push_back(to_boost(g.parts[i]));
        BMulti out;
        bg::buffer(one, out, distance, side, join, end, circle);
        buffered[i] = std::move(out);
    }

    if (d < 0.0) {
        // Eroded parts cannot gain area, so concatenation suffices.
        BMulti all;
        for (BMulti& m : buffered) {
            for (BPolygon& p : m) all.push_back(std::move(p));
        }
        return sanitize(all);
    }
    return sanitize(union_range(buffered, 0, buffered.size()));
}

MultiPolygon boolean_union(const std::vector<MultiPolygon>& gs) {
    std::vector<BMulti> items;
    items.reserve(gs.size());
    for (const MultiPolygon& g : gs) {
        validate(g);
        if (!g.parts.empty()) items.push_back(to_boost(g));
    }
    if (items.empty()) return {};
    return sanitize(union_range(items, 0, items.size()));
}

MultiPolygon union_pair(const MultiPolygon& a, const MultiPolygon& b) {
    BMulti out;
    bg::union_(to_boost(a), to_boost(b), out);
    return sanitize(out);
}

MultiPolygon intersection(const MultiPolygon& a, const MultiPolygon& b) {
    BMulti out;
    bg::intersection(to_boost(a), to_boost(b), out);
    return sanitize(out);
}

MultiPolygon difference(const MultiPolygon& a, const MultiPolygon& b) {
    BMulti out;
    bg::difference(to_boost(a), to_boost(b), out);
    return sanitize(out);
}

bool intersects(const Polygon& a, const Polygon& b) {
    return bg::intersects(to_boost(a), to_boost(b));
}

double intersection_area(const Polygon& a, const Polygon& b) {
    BMulti out;
    bg::intersection(to_boost(a), to_boost(b), out);
    return bg::area(out);
}

Polygon convex_hull(const Polygon& p) {
    validate(p);
    BPolygon hull;
    bg::convex_hull(to_boost(p), hull);
    Polygon out = from_boost(hull);
    out.holes.clear();
    return out;
}

MbrResult min_bounding_rectangle(const Polygon& p) {
    const Polygon hull = convex_hull(p);
    const auto& hv = hull.exterior.vertices;
    if (hv.size() < 3 || ring_signed_area(hull.exterior) < kMinRingArea) {
        fail("degenerate polygon has no bounding rectangle");
    }

    // Canonical edge order: start the sweep at the lexicographically smallest
    // hull vertex so area ties resolve identically on every run.
    std::size_t start = 0;
    for (std::size_t i = 1; i < hv.size(); ++i) {
        if (hv[i].x < hv[start].x || (hv[i].x == hv[start].x && hv[i].y < hv[start].y)) start = i;
    }

    double best_area = std::numeric_limits<double>::max();
    double best_theta = 0.0;
    double best_min_x = 0, best_max_x = 0, best_min_y = 0, best_max_y = 0;
    const std::size_t n = hv.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point& a = hv[(start + k) % n];
        const Point& b = hv[(start + k + 1) % n];
        const double theta = std::atan2(b.y - a.y, b.x - a.x);
        const double c = std::cos(-theta), s = std::sin(-theta);
        double min_x = std::numeric_limits<double>::max(), max_x = std::numeric_limits<double>::lowest();
        double min_y = min_x, max_y = max_x;
        for (const Point& v : hv) {
            const double rx = v.x * c - v.y * s;
            const double ry = v.x * s + v.y * c;
            min_x = std::min(min_x, rx);
            max_x = std::max(max_x, rx);
            min_y = std::min(min_y, ry);
            max_y = std::max(max_y, ry);
        }
        const double a_rect = (max_x - min_x) * (max_y - min_y);
        if (a_rect < best_area) {
            best_area = a_rect;
            best_theta = theta;
            best_min_x = min_x;
            best_max_x = max_x;
            best_min_y = min_y;
            best_max_y = max_y;
        }
    }

    const double w = best_max_x - best_min_x;
    const double h = best_max_y - best_min_y;
    MbrResult res;
    double axis_deg;
    if (w >= h) {
        res.width = w;
        res.height = h;
        axis_deg = best_theta * 180.0 / std::numbers::pi;
    } else {
        res.width = h;
        res.height = w;
        axis_deg = best_theta * 180.0 / std::numbers::pi + 90.0;
    }
    axis_deg = std::fmod(axis_deg, 180.0);
    if (axis_deg < 0.0) axis_deg += 180.0;
    if (axis_deg >= 180.0 - 1e-12) axis_deg -= 180.0;
    res.angle_deg = axis_deg;

    const double c = std::cos(best_theta), s = std::sin(best_theta);
    auto corner = [&](double rx, double ry) -> Point {
        return {rx * c - ry * s, rx * s + ry * c};
    };
    res.rect = make_polygon({corner(best_min_x, best_min_y), corner(best_max_x, best_min_y),
                             corner(best_max_x, best_max_y), corner(best_min_x, best_max_y)});
    return res;
}

namespace {

double seg_seg_distance(Point a, Point b, Point c, Point d) {
    auto point_seg = [](Point p, Point s, Point t) {
        const double dx = t.x - s.x, dy = t.y - s.y;
        const double len2 = dx * dx + dy * dy;
        double u = 0.0;
        if (len2 > 0.0) u = std::clamp(((p.x - s.x) * dx + (p.y - s.y) * dy) / len2, 0.0, 1.0);
        return std::hypot(p.x - (s.x + u * dx), p.y - (s.y + u * dy));
    };
    auto orient2d = [](Point p, Point q, Point r) {
        return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    };
    const double o1 = orient2d(a, b, c), o2 = orient2d(a, b, d);
    const double o3 = orient2d(c, d, a), o4 = orient2d(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;  // proper crossing
    return std::min(std::min(point_seg(a, c, d), point_seg(b, c, d)),
                    std::min(point_seg(c, a, b), point_seg(d, a, b)));
}

void collect_segments(const Polygon& p, std::vector<std::pair<Point, Point>>& segs) {
    auto add_ring = [&](const Ring& r) {
        const std::size_t n = r.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            segs.emplace_back(r.vertices[i], r.vertices[(i + 1) % n]);
        }
    };
    add_ring(p.exterior);
    for (const Ring& h : p.holes) add_ring(h);
}

}  // namespace

double min_separation(const Polygon& a, const Polygon& b) {
    validate(a);
    validate(b);
    if (intersects(a, b)) return 0.0;
    std::vector<std::pair<Point, Point>> sa, sb;
    collect_segments(a, sa);
    collect_segments(b, sb);
    double best = std::numeric_limits<double>::max();
    for (const auto& [p, q] : sa) {
        for (const auto& [r, s] : sb) {
            best = std::min(best, seg_seg_distance(p, q, r, s));
        }
    }
    return best;
}

namespace {

double point_segment_distance(Point p, Point s, Point t) {
    const double dx = t.x - s.x, dy = t.y - s.y;
    const double len2 = dx * dx + dy * dy;
    double u = 0.0;
    if (len2 > 0.0) u = std::clamp(((p.x - s.x) * dx + (p.y - s.y) * dy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (s.x + u * dx), p.y - (s.y + u * dy));
}

void dp_chain(const std::vector<Point>& pts, std::size_t lo, std::size_t hi, double tol,
              std::vector<char>& keep) {
    if (hi <= lo + 1) return;
    double dmax = -1.0;
    std::size_t imax = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const double d = point_segment_distance(pts[i], pts[lo], pts[hi]);
        if (d > dmax) {
            dmax = d;
            imax = i;
        }
    }
    if (dmax > tol) {
        keep[imax] = 1;
        dp_chain(pts, lo, imax, tol, keep);
        dp_chain(pts, imax, hi, tol, keep);
    }
}

Ring simplify_once(const Ring& r, double tol) {
    const auto& v = r.vertices;
    const std::size_t n = v.size();

    // Anchor the closed ring at the lexicographically smallest vertex and the
    // vertex farthest from it, then run Douglas-Peucker on the two open chains.
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (v[i].x < v[i0].x || (v[i].x == v[i0].x && v[i].y < v[i0].y)) i0 = i;
    }
    std::size_t i1 = i0;
    double dmax = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = v[i].x - v[i0].x, dy = v[i].y - v[i0].y;
        const double d = dx * dx + dy * dy;
        if (d > dmax) {
            dmax = d;
            i1 = i;
        }
    }
    if (i1 == i0) return r;

    std::vector<Point> rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[i] = v[(i0 + i) % n];
    const std::size_t split = (i1 + n - i0) % n;

    std::vector<char> keep(n + 1, 0);
    keep[0] = keep[split] = keep[n] = 1;  // index n aliases index 0 (closure)
    std::vector<Point> closed = rotated;
    closed.push_back(rotated[0]);
    dp_chain(closed, 0, split, tol, keep);
    dp_chain(closed, split, n, tol, keep);

    Ring out;
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) out.vertices.push_back(rotated[i]);
    }
    return out;
}

}  // namespace

Ring simplify_ring(const Ring& r, double tolerance) {
    validate(r);
    if (tolerance < 0.0) throw Error(ErrorKind::Config, "simplify tolerance must be >= 0");

    double tol = tolerance;
    for (int attempt = 0; attempt < 40; ++attempt) {
        Ring candidate = simplify_once(r, tol);
        if (candidate.vertices.size() >= 3) {
            Polygon probe;
            probe.exterior = candidate;
            orient(probe.exterior, true);
            if (bg::is_valid(to_boost(probe))) {
                if (ring_signed_area(r) < 0.0) orient(candidate, false);
                else orient(candidate, true);
                return candidate;
            }
        }
        if (tol == 0.0) break;
        tol *= 0.5;  // least-simplified valid fallback ladder
    }
    return r;
}

Ring smooth_ring(const Ring& r, int iterations) {
    validate(r);
    if (iterations < 0 || iterations > 5) {
        throw Error(ErrorKind::Config, "smoothing iterations must lie in [0, 5]");
    }
    Ring cur = r;
    for (int it = 0; it < iterations; ++it) {
        Ring next;
        const auto& v = cur.vertices;
        const std::size_t n = v.size();
        next.vertices.reserve(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            const Point& p = v[i];
            const Point& q = v[(i + 1) % n];
            next.vertices.push_back({0.75 * p.x + 0.25 * q.x, 0.75 * p.y + 0.25 * q.y});
            next.vertices.push_back({0.25 * p.x + 0.75 * q.x, 0.25 * p.y + 0.75 * q.y});
        }
        cur = std::move(next);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Rigid transforms
// ---------------------------------------------------------------------------

namespace {

template <typename F>
Polygon map_points(const Polygon& p, F&& f) {
    Polygon out = p;
    for (Point& v : out.exterior.vertices) v = f(v);
    for (Ring& h : out.holes) {
        for (Point& v : h.vertices) v = f(v);
    }
    return out;
}

}  // namespace

Polygon translated(const Polygon& p, double dx, double dy) {
    return map_points(p, [&](Point v) { return Point{v.x + dx, v.y + dy}; });
}

Polygon scaled_about(const Polygon& p, Point c, double factor) {
    return map_points(p, [&](Point v) {
        return Point{c.x + (v.x - c.x) * factor, c.y + (v.y - c.y) * factor};
    });
}

Polygon rotated_about(const Polygon& p, Point c, double angle_rad) {
    const double cs = std::cos(angle_rad), sn = std::sin(angle_rad);
    return map_points(p, [&](Point v) {
        const double dx = v.x - c.x, dy = v.y - c.y;
        return Point{c.x + dx * cs - dy * sn, c.y + dx * sn + dy * cs};
    });
}

double covered_fraction(const Polygon& p, const Polygon& container) {
    const double a = area(p);
    if (a <= 0.0) return 0.0;
    return intersection_area(p, container) / a;
}

}  // namespace mapgen::geom
