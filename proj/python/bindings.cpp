#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symvoro/analysis.hpp"
#include "symvoro/parallel.hpp"
#include "symvoro/pipeline.hpp"

namespace py = pybind11;
using namespace symvoro;

namespace {

py::list groups() {
    py::list out;
    for (GroupName g : kAllGroups) {
        const GroupMeta meta = group_meta(g);
        py::dict e;
        e["name"] = std::string(to_string(g));
        e["family"] = std::string(to_string(meta.family));
        e["order"] = expected_order(g);
        e["has_reflection"] = meta.has_reflection;
        e["curved_capable"] = meta.curved_capable;
        out.append(e);
    }
    return out;
}

// Labels as a (height, width) array with row 0 at the top, matching the PNG.
py::array_t<std::int32_t> label_array(const LabelMap& m) {
    const int w = m.spec.width;
    const int h = m.spec.height;
    py::array_t<std::int32_t> out({h, w});
    auto view = out.mutable_unchecked<2>();
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) view(h - 1 - j, i) = m.label(i, j);
    }
    return out;
}

py::dict run_scene(const std::string& scene_text, bool geometry) {
    const SceneFile scene = parse_scene(scene_text);
    PipelineResult r;
    std::string report;
    {
        py::gil_scoped_release release;
        r = run_pipeline(scene);
        report = report_json(r, geometry);
    }
    py::dict out;
    out["png"] = py::bytes(reinterpret_cast<const char*>(r.png.data()), r.png.size());
    out["svg"] = r.svg;
    out["report"] = report;
    out["labels"] = label_array(r.map);
    py::dict timing;
    timing["curves"] = r.timing.curves_ms;
    timing["sites"] = r.timing.sites_ms;
    timing["voronoi"] = r.timing.voronoi_ms;
    timing["analysis"] = r.timing.analysis_ms;
    timing["render"] = r.timing.render_ms;
    timing["total"] = r.timing.total_ms;
    out["timing_ms"] = timing;
    return out;
}

py::list survey(const std::vector<std::string>& names, int trials, std::uint64_t seed, int resolution, int cells) {
    SurveyConfig cfg;
    for (const std::string& name : names) {
        const auto g = parse_group_name(name);
        if (!g) throw SceneError("groups", "unknown wallpaper group \"" + name + "\"");
        cfg.groups.push_back(*g);
    }
    if (cfg.groups.empty()) cfg.groups.assign(kAllGroups.begin(), kAllGroups.end());
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.resolution = resolution;
    cfg.cells = cells;
    std::vector<GroupSurvey> rows;
    {
        py::gil_scoped_release release;
        rows = group_survey(sample_segment_stroke, cfg);
    }
    py::list out;
    for (const GroupSurvey& g : rows) {
        py::dict e;
        e["group"] = std::string(to_string(g.group));
        e["trials"] = g.trials;
        e["curved_trials"] = g.curved_trials;
        e["curved_fraction"] = g.curved_fraction;
        e["straight_length_fraction"] = g.mean_straight_length_fraction;
        e["mirror_axis_arcs"] = g.mirror_axis_arcs;
        e["mirror_axis_straight"] = g.mirror_axis_straight;
        if (g.fixed_polygon_hausdorff) e["fixed_polygon_hausdorff_px"] = *g.fixed_polygon_hausdorff / g.pixel_size;
        out.append(e);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Curved-tile Voronoi tessellations of wallpaper-group symmetric line sites.";

    static py::exception<SceneError> scene_error(m, "SceneError", PyExc_ValueError);
    static py::exception<PipelineError> pipeline_error(m, "PipelineError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SceneError& e) {
            py::object exc = py::reinterpret_borrow<py::object>(scene_error)(e.what());
            exc.attr("field") = e.field();
            exc.attr("line") = e.line();
            exc.attr("column") = e.column();
            PyErr_SetObject(scene_error.ptr(), exc.ptr());
        } catch (const PipelineError& e) {
            py::object exc = py::reinterpret_borrow<py::object>(pipeline_error)(e.what());
            exc.attr("stage") = e.stage();
            PyErr_SetObject(pipeline_error.ptr(), exc.ptr());
        }
    });

    m.def("groups", &groups, "Metadata for the 17 wallpaper groups.");
    m.def("normalize_scene", [](const std::string& text) { return serialize_scene(parse_scene(text)); },
          py::arg("scene"), "Parse a scene JSON document and return it with defaults filled in.");
    m.def("tessellate", &run_scene, py::arg("scene"), py::arg("geometry") = true,
          "Run the full pipeline on a scene JSON document.");
    m.def("survey", &survey, py::arg("groups") = std::vector<std::string>{}, py::arg("trials") = 20,
          py::arg("seed") = 1, py::arg("resolution") = 512, py::arg("cells") = 2);
    m.def("worker_count", &worker_count);
    m.def("set_worker_count", &set_worker_count, py::arg("n"));
    m.attr("MAX_RESOLUTION") = kMaxResolution;
}
