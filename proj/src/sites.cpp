#include "symvoro/sites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "symvoro/nearest.hpp"

namespace symvoro {

namespace {

void check_stroke(const SiteShape& s, std::size_t index) {
    const std::string name = "stroke " + std::to_string(index);
    if (s.segments.empty()) throw SiteError(name + " is empty", static_cast<int>(index));
    for (const Segment& seg : s.segments) {
        if (!is_finite(seg.p0) || !is_finite(seg.p1)) {
            throw SiteError(name + " has non-finite coordinates", static_cast<int>(index));
        }
    }
    if (!validate_simple(s)) throw SiteError(name + " is not simple", static_cast<int>(index));
}

std::vector<SiteInstance> place(const std::vector<SiteShape>& strokes, const GroupTable& table, const Rect& window,
                                double margin) {
    std::vector<SiteShape> members;
    members.reserve(strokes.size() * table.order());
    for (const SiteShape& s : strokes) {
        auto o = orbit(s, table);
        members.insert(members.end(), o.begin(), o.end());
    }
    auto instances = replicate(members, table.lattice, window, margin);
    const int order = static_cast<int>(table.order());
    for (SiteInstance& inst : instances) {
        inst.stroke = inst.orbit_index / order;
        inst.op = inst.orbit_index % order;
        inst.placement = compose(inst.placement, table.ops[inst.op]);
    }
    return instances;
}

// Point realising the clearance between two segments (their meeting point when they touch).
Point clearance_witness(const Segment& a, const Segment& b) {
    const Vec2 da = a.p1 - a.p0;
    const Vec2 db = b.p1 - b.p0;
    const double denom = cross(da, db);
    if (denom != 0.0 && segments_intersect(a, b)) {
        const double t = cross(b.p0 - a.p0, db) / denom;
        return a.at(std::clamp(t, 0.0, 1.0));
    }
    struct Option {
        Point on_a, on_b;
    };
    const Option options[] = {{a.p0, closest_point_on_segment(a.p0, b)},
                              {a.p1, closest_point_on_segment(a.p1, b)},
                              {closest_point_on_segment(b.p0, a), b.p0},
                              {closest_point_on_segment(b.p1, a), b.p1}};
    const Option* best = &options[0];
    for (const Option& o : options) {
        if (distance(o.on_a, o.on_b) < distance(best->on_a, best->on_b)) best = &o;
    }
    return (best->on_a + best->on_b) * 0.5;
}

}  // namespace

std::optional<int> find_orbit_self_overlap(const SiteShape& stroke, const GroupTable& table) {
    const Rect home = stroke.bounds().expanded(1e-9 * table.lattice.scale);
    const Lattice& lat = table.lattice;
    for (std::size_t k = 0; k < table.ops.size(); ++k) {
        const SiteShape image = apply_isometry(table.ops[k], stroke);
        const Rect b = image.bounds();
        const Rect q{home.xmin - b.xmax, home.ymin - b.ymax, home.xmax - b.xmin, home.ymax - b.ymin};
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (double x : {q.xmin, q.xmax}) {
            for (double y : {q.ymin, q.ymax}) {
                const Vec2 f = lat.to_lattice({x, y});
                amin = std::min(amin, f.x);
                amax = std::max(amax, f.x);
                bmin = std::min(bmin, f.y);
                bmax = std::max(bmax, f.y);
            }
        }
        for (int a = int(std::floor(amin)) - 1; a <= int(std::ceil(amax)) + 1; ++a) {
            for (int c = int(std::floor(bmin)) - 1; c <= int(std::ceil(bmax)) + 1; ++c) {
                if (k == 0 && a == 0 && c == 0) continue;
                const Vec2 t = lat.translation(a, c);
                if (!b.translated(t).intersects(home)) continue;
                const SiteShape placed = apply_isometry(Isometry2::translation_by(t), image);
                if (distance_shape_shape(placed, stroke) == 0.0) return static_cast<int>(k);
            }
        }
    }
    return std::nullopt;
}

SiteSet build_site_set(const std::vector<SiteShape>& strokes, GroupName group, double scale, const Rect& window,
                       std::optional<double> margin) {
    if (strokes.empty()) throw SiteError("no strokes");
    if (window.degenerate()) throw SiteError("degenerate window");
    for (std::size_t i = 0; i < strokes.size(); ++i) check_stroke(strokes[i], i);

    SiteSet s;
    s.strokes = strokes;
    s.table = group_table(group, scale);
    s.window = window;
    for (std::size_t i = 0; i < strokes.size(); ++i) {
        if (auto op = find_orbit_self_overlap(strokes[i], s.table)) {
            throw SiteError("orbit self-overlap: stroke " + std::to_string(i) + " meets its image under op " +
                                std::to_string(*op),
                            static_cast<int>(i), *op);
        }
    }

    if (margin) {
        if (!(*margin >= 0.0)) throw SiteError("replication margin must be non-negative");
        s.margin = *margin;
    } else {
        const double bootstrap = 2.0 * std::max(norm(s.table.lattice.t1), norm(s.table.lattice.t2));
        const auto first = place(strokes, s.table, window, bootstrap);
        // The bootstrap set is a subset of any larger one, so this r1 can only overestimate.
        s.margin = 2.0 * relative_density_radius(first, window, 128);
    }
    s.instances = place(strokes, s.table, window, s.margin);
    return s;
}

SiteSet custom_site_set(const std::vector<SiteShape>& shapes, const Rect& window) {
    if (shapes.empty()) throw SiteError("no strokes");
    if (window.degenerate()) throw SiteError("degenerate window");
    SiteSet s;
    s.strokes = shapes;
    s.table = group_table(GroupName::p1, 1.0);
    s.window = window;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        check_stroke(shapes[i], i);
        SiteInstance inst;
        inst.id = static_cast<int>(i);
        inst.orbit_index = static_cast<int>(i);
        inst.stroke = static_cast<int>(i);
        inst.shape = shapes[i];
        inst.bounds = inst.shape.bounds();
        s.instances.push_back(std::move(inst));
    }
    return s;
}

double relative_density_radius(const std::vector<SiteInstance>& instances, const Rect& window, int resolution) {
    if (instances.empty()) return std::numeric_limits<double>::infinity();
    SampleGrid grid{{window.xmin, window.ymin}, window.width() / resolution, window.height() / resolution,
                    resolution + 1, resolution + 1};
    const NearestField f = nearest_binned(instances, grid, 8);
    const double worst = *std::max_element(f.dist2.begin(), f.dist2.end());
    return std::sqrt(worst);
}

DeloneReport validate_delone(const SiteSet& s, int probe_resolution) {
    if (probe_resolution < 64) throw SiteError("probe resolution must be at least 64");
    DeloneReport r;
    r.r1_estimate = relative_density_radius(s.instances, s.window, probe_resolution);
    r.relatively_dense = !s.instances.empty() && std::isfinite(r.r1_estimate);

    const auto& inst = s.instances;
    std::vector<std::size_t> order(inst.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return inst[a].bounds.xmin < inst[b].bounds.xmin; });
    double clearance = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    for (std::size_t x = 0; x < order.size(); ++x) {
        const SiteInstance& a = inst[order[x]];
        for (std::size_t y = x + 1; y < order.size(); ++y) {
            const SiteInstance& b = inst[order[y]];
            if (b.bounds.xmin - a.bounds.xmax > clearance) break;
            if (rect_distance(a.bounds, b.bounds) > clearance) continue;
            const double d = distance_shape_shape(a.shape, b.shape);
            if (d < clearance) {
                clearance = d;
                best_a = order[x];
                best_b = order[y];
            }
        }
    }
    r.r0_estimate = std::isfinite(clearance) ? 0.5 * clearance : 0.0;
    r.uniformly_discrete = inst.size() >= 2 ? r.r0_estimate > 0.0 : !inst.empty();

    if (!r.uniformly_discrete && inst.size() >= 2) {
        // Locate the contact between the offending pair.
        double best = std::numeric_limits<double>::infinity();
        for (const Segment& sa : inst[best_a].shape.segments) {
            for (const Segment& sb : inst[best_b].shape.segments) {
                const double d = distance_segment_segment(sa, sb);
                if (d < best) {
                    best = d;
                    r.witness = clearance_witness(sa, sb);
                }
            }
        }
    } else if (!r.relatively_dense) {
        r.witness = s.window.center();
    }
    return r;
}

}  // namespace symvoro
