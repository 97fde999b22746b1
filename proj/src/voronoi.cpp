#include "symvoro/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "symvoro/nearest.hpp"

namespace symvoro {

void RasterSpec::validate() const {
    if (width < 8 || height < 8) throw GeometryError("raster must be at least 8x8 pixels");
    if (window.degenerate()) throw GeometryError("degenerate window");
    const double window_aspect = window.width() / window.height();
    const double pixel_aspect = static_cast<double>(width) / height;
    if (std::abs(window_aspect - pixel_aspect) > 1e-9 * pixel_aspect) {
        throw GeometryError("window aspect ratio does not match the raster");
    }
}

double BoundaryArc::length() const {
    double total = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) total += distance(points[k - 1], points[k]);
    return total;
}

namespace {

SampleGrid pixel_grid(const RasterSpec& spec) {
    const double px = spec.pixel_size();
    return {{spec.window.xmin + 0.5 * px, spec.window.ymin + 0.5 * px}, px, px, spec.width, spec.height};
}

LabelMap to_label_map(const SiteSet& s, const RasterSpec& spec, const NearestField& f) {
    LabelMap m;
    m.spec = spec;
    m.labels.resize(f.index.size());
    m.orbit_labels.resize(f.index.size());
    m.distance.resize(f.index.size());
    for (std::size_t k = 0; k < f.index.size(); ++k) {
        const SiteInstance& inst = s.instances[static_cast<std::size_t>(f.index[k])];
        m.labels[k] = inst.id;
        m.orbit_labels[k] = inst.orbit_index;
        m.distance[k] = std::sqrt(f.dist2[k]);
    }
    return m;
}

void check_input(const SiteSet& s, const RasterSpec& spec) {
    spec.validate();
    if (s.instances.empty()) throw GeometryError("empty instance set");
}

// A unit pixel edge separating two labels.
struct EdgeElement {
    int lo, hi;
    int v0, v1;       // grid vertices, v0 -> v1 in canonical direction
    int left_label;   // label on the left of v0 -> v1
};

}  // namespace

LabelMap tessellate(const SiteSet& s, const RasterSpec& spec) {
    check_input(s, spec);
    return to_label_map(s, spec, nearest_brute(s.instances, pixel_grid(spec)));
}

LabelMap tessellate_accelerated(const SiteSet& s, const RasterSpec& spec) {
    check_input(s, spec);
    return to_label_map(s, spec, nearest_binned(s.instances, pixel_grid(spec)));
}

namespace {

std::vector<BoundaryArc> trace_boundaries(const LabelMap& m, const SiteSet* sites) {
    const int w = m.spec.width;
    const int h = m.spec.height;
    const int vw = w + 1;  // grid vertices per row
    auto vertex = [vw](int i, int j) { return j * vw + i; };

    std::vector<EdgeElement> edges;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const int a = m.label(i, j);
            if (i + 1 < w) {
                const int b = m.label(i + 1, j);
                // Edge x = i+1 running upward; the left pixel (i, j) is on its left.
                if (a != b) edges.push_back({std::min(a, b), std::max(a, b), vertex(i + 1, j), vertex(i + 1, j + 1), a});
            }
            if (j + 1 < h) {
                const int b = m.label(i, j + 1);
                // Edge y = j+1 running in +x; the upper pixel (i, j+1) is on its left.
                if (a != b) edges.push_back({std::min(a, b), std::max(a, b), vertex(i, j + 1), vertex(i + 1, j + 1), b});
            }
        }
    }
    std::stable_sort(edges.begin(), edges.end(), [](const EdgeElement& x, const EdgeElement& y) {
        return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
    });

    const double px = m.spec.pixel_size();
    const Rect& win = m.spec.window;
    auto vertex_point = [&](int v) { return Point{win.xmin + (v % vw) * px, win.ymin + (v / vw) * px}; };
    auto midpoint = [&](const EdgeElement& e) { return (vertex_point(e.v0) + vertex_point(e.v1)) * 0.5; };
    // Slides a point on the edge along the edge normal, between the two pixel-centre
    // offsets, to where both sites are equally far (linear interpolation of the
    // distance difference).
    auto refine = [&](const EdgeElement& e, Point at) {
        if (!sites) return at;
        const Vec2 along = vertex_point(e.v1) - vertex_point(e.v0);
        const Vec2 half = Vec2{along.y, -along.x} * 0.5;
        const Point p = at - half;
        const Point q = at + half;
        const SiteShape& a = sites->instances[static_cast<std::size_t>(e.lo)].shape;
        const SiteShape& b = sites->instances[static_cast<std::size_t>(e.hi)].shape;
        const double fp = distance_point_shape(p, a) - distance_point_shape(p, b);
        const double fq = distance_point_shape(q, a) - distance_point_shape(q, b);
        if (fp == fq) return at;
        const double t = std::clamp(fp / (fp - fq), 0.0, 1.0);
        return p + (q - p) * t;
    };

    std::vector<BoundaryArc> arcs;
    std::vector<char> used(edges.size(), 0);
    std::unordered_map<int, std::vector<int>> incident;
    std::size_t begin = 0;
    while (begin < edges.size()) {
        std::size_t end = begin;
        while (end < edges.size() && edges[end].lo == edges[begin].lo && edges[end].hi == edges[begin].hi) ++end;

        incident.clear();
        for (std::size_t e = begin; e < end; ++e) {
            incident[edges[e].v0].push_back(static_cast<int>(e));
            incident[edges[e].v1].push_back(static_cast<int>(e));
        }
        auto degree = [&](int v) { return incident[v].size(); };

        auto trace = [&](int e, int from) {
            std::vector<int> chain;
            int v = from;
            const int start_edge = e;
            while (true) {
                used[e] = 1;
                chain.push_back(e);
                const int next_v = edges[e].v0 == v ? edges[e].v1 : edges[e].v0;
                if (degree(next_v) != 2) break;
                const auto& at = incident[next_v];
                const int next_e = at[0] == e ? at[1] : at[0];
                if (next_e == start_edge || used[next_e]) break;
                v = next_v;
                e = next_e;
            }
            BoundaryArc arc;
            const EdgeElement& first = edges[chain.front()];
            const bool forward = first.v0 == from;
            arc.left_label = forward ? first.left_label : (first.left_label == first.lo ? first.hi : first.lo);
            arc.right_label = arc.left_label == first.lo ? first.hi : first.lo;
            if (chain.size() == 1) {
                arc.points = {refine(first, vertex_point(from)), refine(first, vertex_point(forward ? first.v1 : first.v0))};
            } else {
                arc.points.reserve(chain.size());
                for (int c : chain) arc.points.push_back(refine(edges[c], midpoint(edges[c])));
            }
            arc.straightness = straightness(arc.points);
            arcs.push_back(std::move(arc));
        };

        // Open chains start at an end point or a junction.
        for (std::size_t e = begin; e < end; ++e) {
            if (used[e]) continue;
            for (int v : {edges[e].v0, edges[e].v1}) {
                if (!used[e] && degree(v) != 2) trace(static_cast<int>(e), v);
            }
        }
        // Whatever remains forms closed loops.
        for (std::size_t e = begin; e < end; ++e) {
            if (!used[e]) trace(static_cast<int>(e), edges[e].v0);
        }
        begin = end;
    }
    return arcs;
}

}  // namespace

std::vector<BoundaryArc> extract_boundaries(const LabelMap& m) { return trace_boundaries(m, nullptr); }

std::vector<BoundaryArc> extract_boundaries(const LabelMap& m, const SiteSet& s) {
    const auto top = std::max_element(m.labels.begin(), m.labels.end());
    if (top != m.labels.end() && static_cast<std::size_t>(*top) >= s.instances.size()) {
        throw GeometryError("extract_boundaries: label map does not match the site set");
    }
    return trace_boundaries(m, &s);
}

double equidistance_check(const SiteSet& s, std::span<const BoundaryArc> arcs) {
    double worst = 0.0;
    for (const BoundaryArc& arc : arcs) {
        const SiteShape& left = s.instances.at(static_cast<std::size_t>(arc.left_label)).shape;
        const SiteShape& right = s.instances.at(static_cast<std::size_t>(arc.right_label)).shape;
        for (const Point& p : arc.points) {
            worst = std::max(worst, std::abs(distance_point_shape(p, left) - distance_point_shape(p, right)));
        }
    }
    return worst;
}

double straightness(std::span<const Point> points) {
    if (points.size() < 3) return 0.0;
    Point c{};
    for (const Point& p : points) c = c + p;
    c = c / static_cast<double>(points.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Point& p : points) {
        const Vec2 d = p - c;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    double worst = 0.0;
    double length = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        worst = std::max(worst, std::abs(cross(dir, points[k] - c)));
        if (k > 0) length += distance(points[k - 1], points[k]);
    }
    return length > 0.0 ? worst / length : 0.0;
}

}  // namespace symvoro
