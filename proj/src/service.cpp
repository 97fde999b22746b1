#include "symvoro/service.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "symvoro/pipeline.hpp"

namespace symvoro {

using nlohmann::ordered_json;

namespace {

ServiceResponse error_response(int status, ordered_json detail) {
    ordered_json body;
    body["error"] = std::move(detail);
    return {status, body.dump()};
}

}  // namespace

ServiceResponse handle_groups() {
    ordered_json list = ordered_json::array();
    for (GroupName g : kAllGroups) {
        const GroupMeta meta = group_meta(g);
        ordered_json e;
        e["name"] = std::string(to_string(g));
        e["family"] = std::string(to_string(meta.family));
        e["order"] = expected_order(g);
        e["has_reflection"] = meta.has_reflection;
        e["curved_capable"] = meta.curved_capable;
        list.push_back(e);
    }
    return {200, list.dump()};
}

ServiceResponse handle_tessellate(const std::string& request_body) {
    SceneFile scene;
    try {
        scene = parse_scene(request_body);
    } catch (const SceneError& e) {
        ordered_json d;
        d["field"] = e.field();
        d["message"] = e.message();
        if (e.line() > 0) {
            d["line"] = e.line();
            d["column"] = e.column();
        }
        return error_response(400, d);
    }
    if (scene.resolution > kMaxResolution || scene_raster(scene).height > kMaxResolution) {
        ordered_json d;
        d["field"] = "resolution";
        d["message"] = "raster exceeds " + std::to_string(kMaxResolution) + " pixels per side";
        return error_response(400, d);
    }
    try {
        const PipelineResult r = run_pipeline(scene);
        ordered_json body = ordered_json::parse(report_json(r, true));
        ordered_json out;
        out["png_base64"] = httplib::detail::base64_encode(std::string(r.png.begin(), r.png.end()));
        out["arcs"] = std::move(body["arcs"]);
        out["cells"] = std::move(body["cells"]);
        out["congruence"] = std::move(body["congruence"]);
        out["straightness"] = std::move(body["straightness"]);
        out["mirror_axes"] = std::move(body["mirror_axes"]);
        if (body.contains("warnings")) out["warnings"] = std::move(body["warnings"]);
        out["svg"] = r.svg;
        ordered_json timing;
        timing["curves"] = r.timing.curves_ms;
        timing["sites"] = r.timing.sites_ms;
        timing["voronoi"] = r.timing.voronoi_ms;
        timing["analysis"] = r.timing.analysis_ms;
        timing["render"] = r.timing.render_ms;
        timing["total"] = r.timing.total_ms;
        out["timing_ms"] = timing;
        return {200, out.dump()};
    } catch (const PipelineError& e) {
        ordered_json d;
        d["stage"] = e.stage();
        d["message"] = e.message();
        return error_response(422, d);
    }
}

bool serve(const ServiceConfig& config) {
    httplib::Server server;
    auto reply = [](httplib::Response& res, const ServiceResponse& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Get("/api/groups", [&](const httplib::Request&, httplib::Response& res) { reply(res, handle_groups()); });
    server.Post("/api/tessellate", [&](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_tessellate(req.body));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options("/api/tessellate", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    return server.listen(config.host, config.port);
}

}  // namespace symvoro
