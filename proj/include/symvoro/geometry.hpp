#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symvoro {

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

/// Free vectors share the point representation (tangents, lattice vectors).
using Vec2 = Point;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    Point center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
    bool degenerate() const { return !(width() > 0.0) || !(height() > 0.0); }
    bool contains(Point p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
    bool intersects(const Rect& o) const {
        return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
    }
    Rect expanded(double m) const { return {xmin - m, ymin - m, xmax + m, ymax + m}; }
    Rect translated(Vec2 t) const { return {xmin + t.x, ymin + t.y, xmax + t.x, ymax + t.y}; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Euclidean distance between two axis-aligned boxes (0 when they overlap).
double rect_distance(const Rect& a, const Rect& b);

/// Rigid motion x -> linear * x + translation, possibly orientation-reversing.
/// linear is stored row-major: {a00, a01, a10, a11}.
struct Isometry2 {
    std::array<double, 4> linear{1.0, 0.0, 0.0, 1.0};
    Vec2 translation{};

    static Isometry2 identity() { return {}; }
    static Isometry2 rotation(double radians, Point center = {});
    static Isometry2 translation_by(Vec2 t) { return {{1.0, 0.0, 0.0, 1.0}, t}; }
    /// Reflection across the line through `through` with direction angle `radians`.
    static Isometry2 reflection(double radians, Point through = {});

    Point apply(Point p) const {
        return {linear[0] * p.x + linear[1] * p.y + translation.x,
                linear[2] * p.x + linear[3] * p.y + translation.y};
    }
    Vec2 apply_linear(Vec2 v) const {
        return {linear[0] * v.x + linear[1] * v.y, linear[2] * v.x + linear[3] * v.y};
    }
    Point operator()(Point p) const { return apply(p); }

    double determinant() const { return linear[0] * linear[3] - linear[1] * linear[2]; }
    bool reverses_orientation() const { return determinant() < 0.0; }
    Isometry2 inverse() const;
    /// True when linear is orthogonal within tol.
    bool is_valid(double tol = 1e-12) const;
    bool approx_equal(const Isometry2& o, double tol) const;
};

/// (a ∘ b)(x) = a(b(x)).
Isometry2 compose(const Isometry2& a, const Isometry2& b);

struct Segment {
    Point p0;
    Point p1;

    Point at(double t) const { return p0 * (1.0 - t) + p1 * t; }
    double length() const { return distance(p0, p1); }
    Rect bounds() const {
        return {std::min(p0.x, p1.x), std::min(p0.y, p1.y), std::max(p0.x, p1.x), std::max(p0.y, p1.y)};
    }
    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class ShapeSource { Polyline, CurveChain };

/// A simple 1-manifold with boundary, stored as its flattened segment chain.
struct SiteShape {
    std::vector<Segment> segments;
    ShapeSource source = ShapeSource::Polyline;

    static SiteShape point(Point p) { return {{Segment{p, p}}, ShapeSource::Polyline}; }
    static SiteShape polyline(std::span<const Point> vertices, ShapeSource source = ShapeSource::Polyline);

    Rect bounds() const;
    /// The chain's vertices in order (segments.size() + 1 points).
    std::vector<Point> vertices() const;
    double length() const;
};

/// Squared point-segment distance. Every nearest-site search in the library
/// funnels through this one function so that alternate search paths agree
/// bit-for-bit.
inline double distance2_point_segment(Point p, const Segment& s) {
    const double dx = s.p1.x - s.p0.x;
    const double dy = s.p1.y - s.p0.y;
    const double px = p.x - s.p0.x;
    const double py = p.y - s.p0.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = (px * dx + py * dy) / len2;
        t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    }
    const double ex = px - t * dx;
    const double ey = py - t * dy;
    return ex * ex + ey * ey;
}

double distance_point_segment(Point p, const Segment& s);
double distance2_point_shape(Point p, const SiteShape& c);
double distance_point_shape(Point p, const SiteShape& c);

/// Closest point on s to p.
Point closest_point_on_segment(Point p, const Segment& s);
/// Minimum distance between two closed segments (0 when they intersect).
double distance_segment_segment(const Segment& a, const Segment& b);
double distance_shape_shape(const SiteShape& a, const SiteShape& b);

/// Closed-segment intersection test, including touching and collinear overlap.
bool segments_intersect(const Segment& a, const Segment& b);

SiteShape apply_isometry(const Isometry2& g, const SiteShape& c);

/// True iff no two non-adjacent segments meet and adjacent segments share only
/// their common endpoint. Throws GeometryError("empty site shape") on an empty shape.
bool validate_simple(const SiteShape& c);

}  // namespace symvoro
