#include "symvoro/pipeline.hpp"

#include <chrono>

#include <nlohmann/json.hpp>

namespace symvoro {

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class Fn>
auto stage(const char* name, double& elapsed, Fn&& fn) {
    const auto t0 = Clock::now();
    try {
        auto out = fn();
        elapsed = ms_since(t0);
        return out;
    } catch (const PipelineError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineError(name, e.what());
    }
}

std::vector<SiteShape> scene_shapes(const SceneFile& scene) {
    std::vector<SiteShape> shapes;
    for (std::size_t k = 0; k < scene.strokes.size(); ++k) {
        try {
            shapes.push_back(stroke_shape(scene.strokes[k]));
        } catch (const std::exception& e) {
            throw PipelineError("curves", "stroke " + std::to_string(k) + ": " + e.what());
        }
    }
    return shapes;
}

ordered_json points_json(const std::vector<Point>& pts) {
    ordered_json a = ordered_json::array();
    for (Point p : pts) a.push_back({p.x, p.y});
    return a;
}

}  // namespace

SiteSet build_scene_sites(const SceneFile& scene) {
    double unused = 0.0;
    const auto shapes = stage("curves", unused, [&] { return scene_shapes(scene); });
    return stage("sites", unused, [&] { return build_site_set(shapes, scene.group, scene.scale, scene_window(scene)); });
}

PipelineResult run_pipeline(const SceneFile& scene) {
    const auto t0 = Clock::now();
    PipelineResult r;
    r.scene = scene;
    const RasterSpec spec = stage("voronoi", r.timing.voronoi_ms, [&] {
        RasterSpec s = scene_raster(scene);
        s.validate();
        return s;
    });
    const auto shapes = stage("curves", r.timing.curves_ms, [&] { return scene_shapes(scene); });
    r.sites = stage("sites", r.timing.sites_ms,
                    [&] { return build_site_set(shapes, scene.group, scene.scale, spec.window); });
    double voronoi_ms = 0.0;
    r.map = stage("voronoi", voronoi_ms, [&] { return tessellate_accelerated(r.sites, spec); });
    r.arcs = stage("voronoi", r.timing.voronoi_ms, [&] { return extract_boundaries(r.map, r.sites); });
    r.timing.voronoi_ms += voronoi_ms;

    stage("analysis", r.timing.analysis_ms, [&] {
        const double px = spec.pixel_size();
        r.cells = extract_cells(r.map, r.sites);
        r.congruence = congruence_check(r.cells, r.sites, kCongruenceTolerancePixels * px);
        r.straightness = straightness_check(r.arcs, px);
        r.mirror_axes = mirror_axis_check(r.arcs, r.sites.table, spec.window, px);
        r.delone = validate_delone(r.sites);
        return 0;
    });
    stage("render", r.timing.render_ms, [&] {
        r.palette = make_palette(r.map, scene.seed, scene.render.color_by);
        r.png = render_png(r.map, r.arcs, r.sites.instances, r.palette, scene.render);
        r.svg = export_svg(r.arcs, r.sites.instances, spec.window, scene.render);
        return 0;
    });
    r.timing.total_ms = ms_since(t0);
    return r;
}

std::string report_json(const PipelineResult& r, bool include_geometry) {
    const GroupMeta meta = group_meta(r.scene.group);
    ordered_json j;
    j["group"] = std::string(to_string(r.scene.group));
    j["order"] = r.sites.table.order();
    j["has_reflection"] = meta.has_reflection;
    j["curved_capable"] = meta.curved_capable;
    const Rect& w = r.map.spec.window;
    j["window"] = {w.xmin, w.ymin, w.xmax, w.ymax};
    j["raster"] = {r.map.spec.width, r.map.spec.height};
    j["instances"] = r.sites.instances.size();
    j["margin"] = r.sites.margin;
    j["arc_count"] = r.arcs.size();
    j["interior_cells"] = r.cells.size();

    ordered_json delone;
    delone["uniformly_discrete"] = r.delone.uniformly_discrete;
    delone["relatively_dense"] = r.delone.relatively_dense;
    delone["r0"] = r.delone.r0_estimate;
    delone["r1"] = r.delone.r1_estimate;
    j["delone"] = delone;

    ordered_json cong;
    cong["pass"] = r.congruence.pass;
    cong["tolerance"] = r.congruence.tolerance;
    cong["checked_orbits"] = r.congruence.checked_orbits;
    ordered_json orbits = ordered_json::array();
    for (const OrbitCongruence& o : r.congruence.orbits) {
        ordered_json oj;
        oj["orbit"] = o.orbit_id;
        oj["cells"] = o.cells;
        oj["max_hausdorff"] = o.max_hausdorff;
        oj["worst_instance"] = o.worst_instance;
        oj["skipped"] = o.skipped;
        if (!o.note.empty()) oj["note"] = o.note;
        orbits.push_back(oj);
    }
    cong["orbits"] = orbits;
    j["congruence"] = cong;

    ordered_json st;
    st["epsilon"] = r.straightness.epsilon;
    st["classified_arcs"] = r.straightness.arc_indices.size();
    st["straight"] = r.straightness.straight;
    st["curved"] = r.straightness.curved;
    st["all_straight"] = r.straightness.all_straight;
    st["any_curved"] = r.straightness.any_curved;
    st["straight_length_fraction"] = r.straightness.straight_length_fraction;
    j["straightness"] = st;

    ordered_json mirror;
    mirror["axis_arcs"] = r.mirror_axes.axis_arcs;
    mirror["straight_axis_arcs"] = r.mirror_axes.straight_axis_arcs;
    mirror["worst_straightness"] = r.mirror_axes.worst_straightness;
    mirror["pass"] = r.mirror_axes.pass;
    j["mirror_axes"] = mirror;
    ordered_json warnings = ordered_json::array();
    if (meta.has_reflection) warnings.push_back("group contains reflections: boundaries on mirror axes are straight");
    if (!r.delone.uniformly_discrete) warnings.push_back("site instances touch: cells are not congruent tiles");
    if (!warnings.empty()) j["warnings"] = warnings;

    if (include_geometry) {
        ordered_json arcs = ordered_json::array();
        for (const BoundaryArc& a : r.arcs) {
            ordered_json aj;
            aj["left"] = a.left_label;
            aj["right"] = a.right_label;
            aj["straightness"] = a.straightness;
            aj["points"] = points_json(a.points);
            arcs.push_back(aj);
        }
        j["arcs"] = arcs;
        ordered_json cells = ordered_json::array();
        for (const CellOutline& c : r.cells) {
            ordered_json cj;
            cj["instance"] = c.instance_id;
            cj["orbit"] = c.orbit_id;
            cj["pixels"] = c.pixel_count;
            cj["area"] = c.area();
            cj["polygon"] = points_json(c.polygon);
            cells.push_back(cj);
        }
        j["cells"] = cells;
    }
    return j.dump(2) + "\n";
}

}  // namespace symvoro
