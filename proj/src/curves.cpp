#include "symvoro/curves.hpp"

#include <cmath>

namespace symvoro {

namespace {

Point lerp(Point a, Point b, double t) { return a * (1.0 - t) + b * t; }

void subdivide(const CubicBezier& b, int levels, std::vector<Segment>& out) {
    if (levels == 0) {
        out.push_back({b.b0, b.b3});
        return;
    }
    const auto [left, right] = b.split(0.5);
    subdivide(left, levels - 1, out);
    subdivide(right, levels - 1, out);
}

}  // namespace

Point CubicBezier::eval(double t) const {
    const double s = 1.0 - t;
    return b0 * (s * s * s) + b1 * (3.0 * s * s * t) + b2 * (3.0 * s * t * t) + b3 * (t * t * t);
}

Vec2 CubicBezier::derivative(double t) const {
    const double s = 1.0 - t;
    return (b1 - b0) * (3.0 * s * s) + (b2 - b1) * (6.0 * s * t) + (b3 - b2) * (3.0 * t * t);
}

std::pair<CubicBezier, CubicBezier> CubicBezier::split(double t) const {
    const Point a = lerp(b0, b1, t);
    const Point b = lerp(b1, b2, t);
    const Point c = lerp(b2, b3, t);
    const Point d = lerp(a, b, t);
    const Point e = lerp(b, c, t);
    const Point m = lerp(d, e, t);
    return {CubicBezier{b0, a, d, m}, CubicBezier{m, e, c, b3}};
}

Point HermiteSegment::eval(double t) const {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return p0 * h00 + m0 * h10 + p1 * h01 + m1 * h11;
}

CubicBezier hermite_to_bezier(const HermiteSegment& h) {
    return {h.p0, h.p0 + h.m0 / 3.0, h.p1 - h.m1 / 3.0, h.p1};
}

HermiteSegment bezier_to_hermite(const CubicBezier& b) {
    return {b.b0, b.b3, (b.b1 - b.b0) * 3.0, (b.b3 - b.b2) * 3.0};
}

std::vector<CubicBezier> catmullrom_to_beziers(const CatmullRomChain& c) {
    const auto& p = c.points;
    const std::size_t n = p.size();
    if (n < 2) throw GeometryError("catmull-rom chain needs at least 2 points");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (p[i] == p[i + 1]) throw GeometryError("catmull-rom chain has repeated consecutive points");
    }

    // Knot spacing per span: 1 (uniform) or sqrt(chord) (centripetal).
    std::vector<double> dt(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dt[i] = c.parameterization == Parameterization::Uniform ? 1.0 : std::sqrt(distance(p[i], p[i + 1]));
    }

    // Tangents with respect to the global knot parameter.
    std::vector<Vec2> m(n);
    m[0] = (p[1] - p[0]) / dt[0];
    m[n - 1] = (p[n - 1] - p[n - 2]) / dt[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (c.parameterization == Parameterization::Uniform) {
            m[i] = (p[i + 1] - p[i - 1]) / 2.0;
        } else {
            const double a = dt[i - 1];
            const double b = dt[i];
            m[i] = (p[i] - p[i - 1]) / a - (p[i + 1] - p[i - 1]) / (a + b) + (p[i + 1] - p[i]) / b;
        }
    }

    std::vector<CubicBezier> out;
    out.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // Rescale tangents to the span's unit parameter.
        out.push_back(hermite_to_bezier({p[i], p[i + 1], m[i] * dt[i], m[i + 1] * dt[i]}));
    }
    return out;
}

std::vector<Segment> flatten(const CubicBezier& b, int levels) {
    if (levels < 0) throw GeometryError("flatten levels must be non-negative");
    if (levels > 16) throw GeometryError("flatten levels above 16 are not supported");
    std::vector<Segment> out;
    out.reserve(std::size_t{1} << levels);
    subdivide(b, levels, out);
    return out;
}

SiteShape flatten_chain(const std::vector<CubicBezier>& chain, int levels) {
    SiteShape shape;
    shape.source = ShapeSource::CurveChain;
    for (const CubicBezier& b : chain) {
        auto segs = flatten(b, levels);
        // Consecutive curves share b3/b0 exactly; re-anchor to keep the chain watertight.
        if (!shape.segments.empty()) segs.front().p0 = shape.segments.back().p1;
        shape.segments.insert(shape.segments.end(), segs.begin(), segs.end());
    }
    return shape;
}

}  // namespace symvoro
