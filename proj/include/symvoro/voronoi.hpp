#pragma once

#include <span>
#include <vector>

#include "symvoro/geometry.hpp"
#include "symvoro/sites.hpp"

namespace symvoro {

/// Pixel grid over a world window. Row j = 0 sits at window.ymin; pixel
/// (i, j) is sampled at its centre.
struct RasterSpec {
    Rect window;
    int width = 0;
    int height = 0;

    /// Throws GeometryError unless width, height >= 8 and pixels are square.
    void validate() const;
    double pixel_size() const { return window.width() / width; }
    Point center(int i, int j) const {
        const double px = pixel_size();
        return {window.xmin + (i + 0.5) * px, window.ymin + (j + 0.5) * px};
    }
    /// Pixel containing p (may be out of range).
    std::array<int, 2> pixel_of(Point p) const {
        const double px = pixel_size();
        return {static_cast<int>(std::floor((p.x - window.xmin) / px)),
                static_cast<int>(std::floor((p.y - window.ymin) / px))};
    }
    bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < width && j < height; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
};

/// Discrete Voronoi tessellation: nearest instance per pixel.
struct LabelMap {
    RasterSpec spec;
    std::vector<int> labels;        // instance ids
    std::vector<int> orbit_labels;  // orbit index of the labelled instance
    std::vector<double> distance;   // distance to the labelled instance

    int label(int i, int j) const { return labels[spec.index(i, j)]; }
    int orbit_label(int i, int j) const { return orbit_labels[spec.index(i, j)]; }
};

/// Boundary between two labels, traced through the midpoints of the pixel
/// edges separating them. left_label lies to the left of the traversal direction.
struct BoundaryArc {
    int left_label = -1;
    int right_label = -1;
    std::vector<Point> points;
    /// Max deviation from the least-squares line, divided by arc length.
    double straightness = 0.0;

    double length() const;
};

/// Brute-force lower envelope: every instance tested at every pixel. Ties go to the lowest id.
LabelMap tessellate(const SiteSet& s, const RasterSpec& spec);

/// Binned candidate pruning; labels and distances identical to tessellate.
LabelMap tessellate_accelerated(const SiteSet& s, const RasterSpec& spec);

/// Arc points at pixel-edge midpoints of the label map.
std::vector<BoundaryArc> extract_boundaries(const LabelMap& m);

/// Same arcs, each point moved onto the bisector of its two sites between the
/// adjacent pixel centres.
std::vector<BoundaryArc> extract_boundaries(const LabelMap& m, const SiteSet& s);

/// Max over all arc points of |d(point, left site) - d(point, right site)|.
double equidistance_check(const SiteSet& s, std::span<const BoundaryArc> arcs);

/// Max perpendicular deviation from the total-least-squares line through
/// points, divided by the polyline length. Zero for fewer than 3 points.
double straightness(std::span<const Point> points);

}  // namespace symvoro
