#include "symvoro/geometry.hpp"

#include <algorithm>
#include <limits>

namespace symvoro {

double rect_distance(const Rect& a, const Rect& b) {
    const double dx = std::max({0.0, b.xmin - a.xmax, a.xmin - b.xmax});
    const double dy = std::max({0.0, b.ymin - a.ymax, a.ymin - b.ymax});
    return std::hypot(dx, dy);
}

Isometry2 Isometry2::rotation(double radians, Point center) {
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    Isometry2 g{{c, -s, s, c}, {}};
    g.translation = center - g.apply_linear(center);
    return g;
}

Isometry2 Isometry2::reflection(double radians, Point through) {
    const double c = std::cos(2.0 * radians);
    const double s = std::sin(2.0 * radians);
    Isometry2 g{{c, s, s, -c}, {}};
    g.translation = through - g.apply_linear(through);
    return g;
}

Isometry2 Isometry2::inverse() const {
    // Orthogonal: inverse of the linear part is its transpose.
    Isometry2 inv{{linear[0], linear[2], linear[1], linear[3]}, {}};
    const Vec2 t = inv.apply_linear(translation);
    inv.translation = {-t.x, -t.y};
    return inv;
}

bool Isometry2::is_valid(double tol) const {
    const double c00 = linear[0] * linear[0] + linear[2] * linear[2];
    const double c01 = linear[0] * linear[1] + linear[2] * linear[3];
    const double c11 = linear[1] * linear[1] + linear[3] * linear[3];
    return std::abs(c00 - 1.0) <= tol && std::abs(c01) <= tol && std::abs(c11 - 1.0) <= tol &&
           is_finite(translation);
}

bool Isometry2::approx_equal(const Isometry2& o, double tol) const {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(linear[i] - o.linear[i]) > tol) return false;
    }
    return std::abs(translation.x - o.translation.x) <= tol &&
           std::abs(translation.y - o.translation.y) <= tol;
}

Isometry2 compose(const Isometry2& a, const Isometry2& b) {
    const auto& A = a.linear;
    const auto& B = b.linear;
    Isometry2 r;
    r.linear = {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
                A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
    r.translation = a.apply(b.translation);
    return r;
}

SiteShape SiteShape::polyline(std::span<const Point> vertices, ShapeSource source) {
    SiteShape s;
    s.source = source;
    if (vertices.size() == 1) {
        s.segments.push_back({vertices[0], vertices[0]});
        return s;
    }
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        s.segments.push_back({vertices[i], vertices[i + 1]});
    }
    return s;
}

Rect SiteShape::bounds() const {
    Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& s : segments) {
        const Rect b = s.bounds();
        r.xmin = std::min(r.xmin, b.xmin);
        r.ymin = std::min(r.ymin, b.ymin);
        r.xmax = std::max(r.xmax, b.xmax);
        r.ymax = std::max(r.ymax, b.ymax);
    }
    return r;
}

std::vector<Point> SiteShape::vertices() const {
    std::vector<Point> v;
    if (segments.empty()) return v;
    v.reserve(segments.size() + 1);
    v.push_back(segments.front().p0);
    for (const auto& s : segments) v.push_back(s.p1);
    return v;
}

double SiteShape::length() const {
    double total = 0.0;
    for (const auto& s : segments) total += s.length();
    return total;
}

double distance_point_segment(Point p, const Segment& s) {
    return std::sqrt(distance2_point_segment(p, s));
}

double distance2_point_shape(Point p, const SiteShape& c) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : c.segments) best = std::min(best, distance2_point_segment(p, s));
    return best;
}

double distance_point_shape(Point p, const SiteShape& c) {
    return std::sqrt(distance2_point_shape(p, c));
}

Point closest_point_on_segment(Point p, const Segment& s) {
    const Vec2 d = s.p1 - s.p0;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return s.p0;
    const double t = std::clamp(dot(p - s.p0, d) / len2, 0.0, 1.0);
    return s.at(t);
}

namespace {

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

// c is known collinear with [a,b]; is it inside the closed box of [a,b]?
bool on_segment(Point a, Point b, Point c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Segment& a, const Segment& b) {
    const int o1 = orientation(a.p0, a.p1, b.p0);
    const int o2 = orientation(a.p0, a.p1, b.p1);
    const int o3 = orientation(b.p0, b.p1, a.p0);
    const int o4 = orientation(b.p0, b.p1, a.p1);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a.p0, a.p1, b.p0)) return true;
    if (o2 == 0 && on_segment(a.p0, a.p1, b.p1)) return true;
    if (o3 == 0 && on_segment(b.p0, b.p1, a.p0)) return true;
    if (o4 == 0 && on_segment(b.p0, b.p1, a.p1)) return true;
    return false;
}

double distance_segment_segment(const Segment& a, const Segment& b) {
    if (segments_intersect(a, b)) return 0.0;
    return std::sqrt(std::min({distance2_point_segment(a.p0, b), distance2_point_segment(a.p1, b),
                               distance2_point_segment(b.p0, a), distance2_point_segment(b.p1, a)}));
}

double distance_shape_shape(const SiteShape& a, const SiteShape& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sa : a.segments) {
        for (const auto& sb : b.segments) {
            if (rect_distance(sa.bounds(), sb.bounds()) >= best) continue;
            best = std::min(best, distance_segment_segment(sa, sb));
            if (best == 0.0) return 0.0;
        }
    }
    return best;
}

SiteShape apply_isometry(const Isometry2& g, const SiteShape& c) {
    SiteShape out;
    out.source = c.source;
    out.segments.reserve(c.segments.size());
    for (const auto& s : c.segments) out.segments.push_back({g.apply(s.p0), g.apply(s.p1)});
    return out;
}

bool validate_simple(const SiteShape& c) {
    if (c.segments.empty()) throw GeometryError("empty site shape");
    const auto& segs = c.segments;
    const std::size_t n = segs.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Segment& a = segs[i];
            const Segment& b = segs[j];
            const bool chained = j == i + 1 && a.p1 == b.p0;
            if (!chained) {
                if (segments_intersect(a, b)) return false;
                continue;
            }
            // Chained neighbours meet at the shared vertex; they overlap beyond it
            // only when collinear and folding back.
            const Vec2 da = a.p1 - a.p0;
            const Vec2 db = b.p1 - b.p0;
            if (cross(da, db) == 0.0 && dot(da, db) < 0.0) return false;
        }
    }
    return true;
}

}  // namespace symvoro
