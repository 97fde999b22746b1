#pragma once

#include <vector>

#include "symvoro/geometry.hpp"

namespace symvoro {

/// Depth of midpoint subdivision used when a stroke does not specify one (16 segments).
inline constexpr int kDefaultFlattenLevels = 4;

struct CubicBezier {
    Point b0, b1, b2, b3;

    Point eval(double t) const;
    /// First derivative with respect to t.
    Vec2 derivative(double t) const;
    /// De Casteljau split at t.
    std::pair<CubicBezier, CubicBezier> split(double t = 0.5) const;

    friend bool operator==(const CubicBezier&, const CubicBezier&) = default;
};

struct HermiteSegment {
    Point p0, p1;
    Vec2 m0, m1;

    Point eval(double t) const;
};

enum class Parameterization { Uniform, Centripetal };

struct CatmullRomChain {
    std::vector<Point> points;
    Parameterization parameterization = Parameterization::Uniform;
};

CubicBezier hermite_to_bezier(const HermiteSegment& h);
HermiteSegment bezier_to_hermite(const CubicBezier& b);

/// One Bezier per span between consecutive points. End spans use one-sided
/// tangents (p1 - p0 and p[n-1] - p[n-2]). Throws GeometryError on fewer than
/// two points or repeated consecutive points.
std::vector<CubicBezier> catmullrom_to_beziers(const CatmullRomChain& c);

/// Midpoint De Casteljau subdivision to `levels`, yielding 2^levels chords
/// whose vertices lie on the curve at parameters k / 2^levels.
std::vector<Segment> flatten(const CubicBezier& b, int levels = kDefaultFlattenLevels);

/// Flattens a chain of Beziers into one SiteShape, dropping the duplicated
/// join vertices so the segments stay chained.
SiteShape flatten_chain(const std::vector<CubicBezier>& chain, int levels = kDefaultFlattenLevels);

}  // namespace symvoro
