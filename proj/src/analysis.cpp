#include "symvoro/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

#include "symvoro/parallel.hpp"

namespace symvoro {

namespace {

constexpr std::array<std::array<int, 2>, 4> kDirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

struct LabelStats {
    std::size_t count = 0;
    int imin = std::numeric_limits<int>::max();
    int jmin = std::numeric_limits<int>::max();
    int imax = -1;
    int jmax = -1;
};

double signed_area(const std::vector<Point>& poly) {
    double a = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) a += cross(poly[k], poly[(k + 1) % poly.size()]);
    return 0.5 * a;
}

// Outer boundary of the pixels labelled `label`, walked counter-clockwise
// along pixel edges and reported as edge midpoints.
std::vector<Point> trace_outline(const LabelMap& m, int label, const LabelStats& st) {
    const int w = m.spec.width;
    const int vw = w + 1;
    struct DirectedEdge {
        int i, j, dir;
    };
    std::vector<DirectedEdge> edges;
    std::unordered_map<int, std::array<int, 2>> outgoing;
    auto add = [&](int i, int j, int dir) {
        const int id = static_cast<int>(edges.size());
        edges.push_back({i, j, dir});
        auto [it, inserted] = outgoing.try_emplace(j * vw + i, std::array<int, 2>{id, -1});
        if (!inserted) it->second[1] = id;
    };
    auto is_label = [&](int i, int j) { return m.spec.in_range(i, j) && m.label(i, j) == label; };
    for (int j = st.jmin; j <= st.jmax; ++j) {
        for (int i = st.imin; i <= st.imax; ++i) {
            if (m.label(i, j) != label) continue;
            if (!is_label(i, j - 1)) add(i, j, 0);
            if (!is_label(i + 1, j)) add(i + 1, j, 1);
            if (!is_label(i, j + 1)) add(i + 1, j + 1, 2);
            if (!is_label(i - 1, j)) add(i, j + 1, 3);
        }
    }

    const double px = m.spec.pixel_size();
    const Rect& win = m.spec.window;
    std::vector<char> used(edges.size(), 0);
    std::vector<Point> best;
    double best_area = -std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (used[start]) continue;
        std::vector<Point> loop;
        int e = static_cast<int>(start);
        while (true) {
            used[e] = 1;
            const DirectedEdge& d = edges[e];
            const double mx = d.i + 0.5 * kDirs[d.dir][0];
            const double my = d.j + 0.5 * kDirs[d.dir][1];
            loop.push_back({win.xmin + mx * px, win.ymin + my * px});
            const int ni = d.i + kDirs[d.dir][0];
            const int nj = d.j + kDirs[d.dir][1];
            const auto it = outgoing.find(nj * vw + ni);
            if (it == outgoing.end()) break;
            // Right turns first: at a diagonal pinch the walk crosses over instead of closing a sub-loop.
            int next = -1;
            for (int turn : {3, 0, 1}) {
                const int want = (d.dir + turn) % 4;
                for (int cand : it->second) {
                    if (cand >= 0 && edges[cand].dir == want && (!used[cand] || cand == static_cast<int>(start))) {
                        next = cand;
                        break;
                    }
                }
                if (next >= 0) break;
            }
            if (next < 0 || next == static_cast<int>(start)) break;
            e = next;
        }
        const double area = signed_area(loop);
        if (area > best_area) {
            best_area = area;
            best = std::move(loop);
        }
    }
    return best;
}

double directed_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
    const std::size_t n = b.size();
    if (a.empty() || n == 0) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::size_t hint = 0;
    for (const Point& p : a) {
        double nearest = std::numeric_limits<double>::infinity();
        const std::size_t from = hint;
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t k = (from + step) % n;
            const double d2 = distance2_point_segment(p, {b[k], b[(k + 1) % n]});
            if (d2 < nearest) {
                nearest = d2;
                hint = k;
            }
            if (nearest <= worst) break;  // p cannot raise the maximum
        }
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

std::vector<Point> map_polygon(const Isometry2& g, const std::vector<Point>& poly) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (const Point& p : poly) out.push_back(g.apply(p));
    return out;
}

}  // namespace

double CellOutline::area() const { return std::abs(signed_area(polygon)); }

std::vector<CellOutline> extract_cells(const LabelMap& m, const SiteSet& s) {
    const int w = m.spec.width;
    const int h = m.spec.height;
    std::vector<LabelStats> stats(s.instances.size());
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            LabelStats& st = stats.at(static_cast<std::size_t>(m.label(i, j)));
            ++st.count;
            st.imin = std::min(st.imin, i);
            st.imax = std::max(st.imax, i);
            st.jmin = std::min(st.jmin, j);
            st.jmax = std::max(st.jmax, j);
        }
    }
    std::vector<CellOutline> cells;
    for (std::size_t label = 0; label < stats.size(); ++label) {
        const LabelStats& st = stats[label];
        if (st.count == 0 || st.imin == 0 || st.jmin == 0 || st.imax == w - 1 || st.jmax == h - 1) continue;
        CellOutline c;
        c.instance_id = static_cast<int>(label);
        c.orbit_id = s.instances[label].stroke;
        c.pixel_count = st.count;
        c.polygon = trace_outline(m, static_cast<int>(label), st);
        cells.push_back(std::move(c));
    }
    return cells;
}

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

CongruenceReport congruence_check(const std::vector<CellOutline>& cells, const SiteSet& s, double tolerance) {
    CongruenceReport r;
    r.tolerance = tolerance;
    std::map<int, std::vector<const CellOutline*>> by_orbit;
    for (const CellOutline& c : cells) by_orbit[c.orbit_id].push_back(&c);
    for (auto& [orbit_id, members] : by_orbit) {
        OrbitCongruence oc;
        oc.orbit_id = orbit_id;
        oc.cells = members.size();
        if (members.size() < 2) {
            oc.skipped = true;
            oc.note = "single interior cell; nothing to compare";
            r.orbits.push_back(oc);
            continue;
        }
        auto canonical = [&](const CellOutline& c) {
            const Isometry2& placement = s.instances.at(static_cast<std::size_t>(c.instance_id)).placement;
            return map_polygon(placement.inverse(), c.polygon);
        };
        const std::vector<Point> reference = canonical(*members.front());
        for (std::size_t k = 1; k < members.size(); ++k) {
            const double d = hausdorff_distance(canonical(*members[k]), reference);
            if (d > oc.max_hausdorff) {
                oc.max_hausdorff = d;
                oc.worst_instance = members[k]->instance_id;
            }
        }
        ++r.checked_orbits;
        if (oc.max_hausdorff > tolerance) r.pass = false;
        r.orbits.push_back(oc);
    }
    return r;
}

StraightnessReport straightness_check(const std::vector<BoundaryArc>& arcs, double pixel_size, double epsilon) {
    StraightnessReport r;
    r.epsilon = epsilon;
    double straight_len = 0.0;
    double total_len = 0.0;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const double len = arcs[k].length();
        if (len < kMinArcPixels * pixel_size) continue;
        r.arc_indices.push_back(k);
        r.values.push_back(arcs[k].straightness);
        total_len += len;
        if (arcs[k].straightness <= epsilon) {
            ++r.straight;
            straight_len += len;
        } else {
            ++r.curved;
        }
    }
    r.all_straight = r.curved == 0;
    r.any_curved = r.curved > 0;
    r.straight_length_fraction = total_len > 0.0 ? straight_len / total_len : 1.0;
    return r;
}

MirrorAxisReport mirror_axis_check(const std::vector<BoundaryArc>& arcs, const GroupTable& table, const Rect& window,
                                   double pixel_size, double epsilon, double within_pixels) {
    MirrorAxisReport r;
    const std::vector<Line> lines = mirror_lines(table, window);
    const double reach = within_pixels * pixel_size;
    for (const BoundaryArc& arc : arcs) {
        if (arc.length() < kMinArcPixels * pixel_size) continue;
        const bool on_axis = std::any_of(lines.begin(), lines.end(), [&](const Line& line) {
            return std::all_of(arc.points.begin(), arc.points.end(),
                               [&](const Point& p) { return line.distance(p) <= reach; });
        });
        if (!on_axis) continue;
        ++r.axis_arcs;
        r.worst_straightness = std::max(r.worst_straightness, arc.straightness);
        if (arc.straightness <= epsilon) ++r.straight_axis_arcs;
    }
    r.pass = r.straight_axis_arcs == r.axis_arcs;
    return r;
}

CompartmentCensus compartment_census(const LabelMap& m, const GroupTable& table) {
    CompartmentCensus c;
    const std::vector<Line> lines = mirror_lines(table, m.spec.window);
    c.mirror_lines = lines.size();
    if (lines.empty()) return c;

    // Parallel mirrors form a family; a compartment is identified by how many
    // lines of each family lie below the point.
    struct Family {
        Vec2 normal;
        std::vector<double> offsets;
    };
    std::map<long long, Family> families;
    for (const Line& l : lines) {
        const long long key = std::llround(std::atan2(l.direction.y, l.direction.x) * 1e6);
        Family& f = families[key];
        f.normal = {-l.direction.y, l.direction.x};
        f.offsets.push_back(dot(f.normal, l.through));
    }
    for (auto& [key, f] : families) std::sort(f.offsets.begin(), f.offsets.end());

    const double px = m.spec.pixel_size();
    const int w = m.spec.width;
    const int h = m.spec.height;
    std::map<std::vector<int>, int> compartment_ids;
    std::vector<std::set<int>> labels_in;
    std::vector<char> touches_border;
    std::map<int, std::set<int>> compartments_of;
    std::vector<int> key;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const Point p = m.spec.center(i, j);
            bool near_line = false;
            key.clear();
            for (const auto& [fk, f] : families) {
                const double o = dot(f.normal, p);
                const auto it = std::lower_bound(f.offsets.begin(), f.offsets.end(), o);
                if ((it != f.offsets.end() && *it - o <= 1.5 * px) ||
                    (it != f.offsets.begin() && o - *(it - 1) <= 1.5 * px)) {
                    near_line = true;
                    break;
                }
                key.push_back(static_cast<int>(it - f.offsets.begin()));
            }
            if (near_line) continue;
            auto [it, inserted] = compartment_ids.try_emplace(key, static_cast<int>(labels_in.size()));
            if (inserted) {
                labels_in.emplace_back();
                touches_border.push_back(0);
            }
            const int id = it->second;
            const int label = m.label(i, j);
            labels_in[id].insert(label);
            compartments_of[label].insert(id);
            if (i < 2 || j < 2 || i >= w - 2 || j >= h - 2) touches_border[id] = 1;
        }
    }
    bool first = true;
    for (std::size_t id = 0; id < labels_in.size(); ++id) {
        if (touches_border[id]) continue;
        ++c.closed_compartments;
        const std::size_t n = labels_in[id].size();
        c.min_labels = first ? n : std::min(c.min_labels, n);
        c.max_labels = first ? n : std::max(c.max_labels, n);
        first = false;
    }
    for (const auto& [label, comps] : compartments_of) {
        if (comps.size() > 1) ++c.straddling_labels;
    }
    return c;
}

const CellOutline* cell_containing(const std::vector<CellOutline>& cells, const LabelMap& m, Point p) {
    const auto [i, j] = m.spec.pixel_of(p);
    if (!m.spec.in_range(i, j)) return nullptr;
    const int label = m.label(i, j);
    for (const CellOutline& c : cells) {
        if (c.instance_id == label) return &c;
    }
    return nullptr;
}

bool is_fixed_polygon_group(GroupName g) {
    return g == GroupName::p4m || g == GroupName::pmm || g == GroupName::p3m1 || g == GroupName::p6m;
}

SiteShape sample_segment_stroke(std::mt19937_64& rng, const GroupTable& table) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Lattice& lat = table.lattice;
    const Point a = lat.translation(unit(rng), unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double fundamental = std::sqrt(lat.cell_area() / static_cast<double>(table.order()));
    const double length = (0.3 + 0.4 * unit(rng)) * fundamental;
    const Point b = a + Vec2{std::cos(angle), std::sin(angle)} * length;
    return SiteShape{{Segment{a, b}}, ShapeSource::Polyline};
}

namespace {

struct TrialOutcome {
    bool ok = false;
    bool any_curved = false;
    double straight_fraction = 1.0;
    MirrorAxisReport mirror;
    std::optional<std::vector<Point>> reference_cell;
    std::optional<CompartmentCensus> census;
    int rejected = 0;
};

TrialOutcome run_trial(const StrokeSampler& sampler, GroupName group, int trial, const SurveyConfig& config) {
    TrialOutcome out;
    const GroupTable table = group_table(group, 1.0);
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(group), static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    const double extent = config.cells * table.lattice.scale;
    const Rect window{0.0, 0.0, extent, extent};

    std::optional<SiteSet> sites;
    for (int attempt = 0; attempt < 500 && !sites; ++attempt) {
        const SiteShape stroke = sampler(rng, table);
        if (!validate_simple(stroke) || find_orbit_self_overlap(stroke, table)) {
            ++out.rejected;
            continue;
        }
        try {
            sites = build_site_set({stroke}, group, 1.0, window);
        } catch (const SiteError&) {
            ++out.rejected;
        }
    }
    if (!sites) return out;

    const RasterSpec spec{window, config.resolution, config.resolution};
    const LabelMap map = tessellate_accelerated(*sites, spec);
    const auto arcs = extract_boundaries(map, *sites);
    const double px = spec.pixel_size();
    const StraightnessReport st = straightness_check(arcs, px);
    out.any_curved = st.any_curved;
    out.straight_fraction = st.straight_length_fraction;
    out.mirror = mirror_axis_check(arcs, table, window, px);
    if (is_fixed_polygon_group(group)) {
        const auto cells = extract_cells(map, *sites);
        const Point probe = window.center() + Vec2{0.1234, 0.0567} * table.lattice.scale;
        if (const CellOutline* c = cell_containing(cells, map, probe)) out.reference_cell = c->polygon;
    }
    if (group_meta(group).has_reflection) out.census = compartment_census(map, table);
    out.ok = true;
    return out;
}

}  // namespace

std::vector<GroupSurvey> group_survey(const StrokeSampler& sampler, const SurveyConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("survey needs at least one trial");
    std::vector<GroupSurvey> results;
    for (GroupName group : config.groups) {
        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
        parallel_for(outcomes.size(), [&](std::size_t t) {
            outcomes[t] = run_trial(sampler, group, static_cast<int>(t), config);
        });

        GroupSurvey g;
        g.group = group;
        g.pixel_size = config.cells * 1.0 / config.resolution;
        double straight_sum = 0.0;
        std::vector<const std::vector<Point>*> reference_cells;
        bool missing_reference = false;
        for (const TrialOutcome& o : outcomes) {
            g.rejected_samples += o.rejected;
            if (!o.ok) continue;
            ++g.trials;
            if (o.any_curved) ++g.curved_trials;
            straight_sum += o.straight_fraction;
            g.mirror_axis_arcs += o.mirror.axis_arcs;
            g.mirror_axis_straight += o.mirror.straight_axis_arcs;
            if (o.reference_cell) {
                reference_cells.push_back(&*o.reference_cell);
            } else if (is_fixed_polygon_group(group)) {
                missing_reference = true;
            }
            if (o.census && o.census->closed_compartments > 0) {
                g.compartment_min_labels =
                    g.compartment_min_labels ? std::min(*g.compartment_min_labels, o.census->min_labels)
                                             : o.census->min_labels;
                g.compartment_max_labels =
                    g.compartment_max_labels ? std::max(*g.compartment_max_labels, o.census->max_labels)
                                             : o.census->max_labels;
            }
            if (o.census) g.straddling_labels += o.census->straddling_labels;
        }
        if (g.trials > 0) {
            g.curved_fraction = static_cast<double>(g.curved_trials) / g.trials;
            g.mean_straight_length_fraction = straight_sum / g.trials;
        }
        if (is_fixed_polygon_group(group)) {
            double worst = missing_reference ? std::numeric_limits<double>::infinity() : 0.0;
            for (std::size_t a = 0; a < reference_cells.size(); ++a) {
                for (std::size_t b = a + 1; b < reference_cells.size(); ++b) {
                    worst = std::max(worst, hausdorff_distance(*reference_cells[a], *reference_cells[b]));
                }
            }
            g.fixed_polygon_hausdorff = worst;
        }
        results.push_back(g);
    }
    return results;
}

}  // namespace symvoro
