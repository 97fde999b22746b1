#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "symvoro/parallel.hpp"
#include "symvoro/pipeline.hpp"
#include "symvoro/service.hpp"

using namespace symvoro;
using nlohmann::json;

namespace {

SceneFile scene(const std::string& group, const std::string& points, int resolution = 256) {
    return parse_scene(R"({"group": ")" + group + R"(", "strokes": [{"points": )" + points +
                       R"(}], "resolution": )" + std::to_string(resolution) + "}");
}

}  // namespace

TEST(Pipeline, P1PointSceneIsASquareTiling) {
    const PipelineResult r = run_pipeline(
        parse_scene(R"({"group": "p1", "strokes": [{"points": [[0.5, 0.5]]}], "window": {"cells": [4, 4]},
                        "resolution": 256})"));
    EXPECT_TRUE(r.congruence.pass);
    EXPECT_EQ(r.cells.size(), 4u);
    for (const CellOutline& c : r.cells) EXPECT_EQ(c.pixel_count, 64u * 64u);
    EXPECT_TRUE(r.straightness.all_straight);
}

TEST(Pipeline, P2SceneHasCurvedCongruentTiles) {
    const PipelineResult r = run_pipeline(scene("p2", "[[0.1, 0.1], [0.35, 0.3]]", 512));
    EXPECT_TRUE(r.straightness.any_curved);
    EXPECT_TRUE(r.congruence.pass);
    EXPECT_GE(r.congruence.checked_orbits, 1u);
}

TEST(Pipeline, PmMirrorArcsStraight) {
    const PipelineResult r = run_pipeline(scene("pm", "[[0.1, 0.1], [0.3, 0.35]]", 512));
    EXPECT_GT(r.mirror_axes.axis_arcs, 0u);
    EXPECT_TRUE(r.mirror_axes.pass);
}

TEST(Pipeline, ErrorsCarryTheStage) {
    try {
        run_pipeline(scene("p2", "[[-0.1, -0.05], [0.2, 0.1]]"));
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "sites");
        EXPECT_NE(e.message().find("orbit self-overlap"), std::string::npos);
    }
    try {
        run_pipeline(scene("p1", "[[0.1, 0.1], [0.3, 0.3], [0.3, 0.1], [0.1, 0.3]]"));
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "sites");
        EXPECT_NE(e.message().find("not simple"), std::string::npos);
    }
}

TEST(Pipeline, ReportIsDeterministicAcrossWorkerCounts) {
    const SceneFile s = scene("p6", "[[0.1, 0.05], [0.2, 0.15], [0.3, 0.12]]");
    const int saved = worker_count();
    set_worker_count(1);
    const PipelineResult a = run_pipeline(s);
    set_worker_count(3);
    const PipelineResult b = run_pipeline(s);
    set_worker_count(saved);
    EXPECT_EQ(a.map.labels, b.map.labels);
    EXPECT_EQ(a.png, b.png);
    EXPECT_EQ(a.svg, b.svg);
    EXPECT_EQ(report_json(a, true), report_json(b, true));
}

TEST(Service, GroupsEndpoint) {
    const ServiceResponse r = handle_groups();
    EXPECT_EQ(r.status, 200);
    const json j = json::parse(r.body);
    ASSERT_EQ(j.size(), 17u);
    int curved = 0;
    for (const json& g : j) {
        for (const char* key : {"name", "family", "order", "has_reflection", "curved_capable"}) {
            EXPECT_TRUE(g.contains(key)) << key;
        }
        curved += g["curved_capable"].get<bool>();
    }
    EXPECT_EQ(curved, 6);
    EXPECT_EQ(j[16]["name"], "p6m");
    EXPECT_EQ(j[16]["order"], 12);
    EXPECT_EQ(j[16]["family"], "hex");
}

TEST(Service, TessellateMinimalScene) {
    const ServiceResponse r =
        handle_tessellate(R"({"group": "p1", "strokes": [{"points": [[0.2, 0.2], [0.5, 0.4]]}], "resolution": 64})");
    ASSERT_EQ(r.status, 200) << r.body;
    const json j = json::parse(r.body);
    for (const char* key : {"png_base64", "arcs", "cells", "congruence", "straightness", "timing_ms"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["png_base64"].get<std::string>().rfind("iVBORw0KGgo", 0), 0u);
    EXPECT_FALSE(j["arcs"].empty());
}

TEST(Service, ErrorStatuses) {
    ServiceResponse r = handle_tessellate(R"({"group": "p8", "strokes": [{"points": [[0, 0]]}]})");
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(json::parse(r.body)["error"]["field"], "group");

    r = handle_tessellate("{ not json");
    EXPECT_EQ(r.status, 400);
    EXPECT_TRUE(json::parse(r.body)["error"].contains("line"));

    r = handle_tessellate(R"({"group": "p1", "strokes": [{"points": [[0, 0]]}], "resolution": 4096})");
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(json::parse(r.body)["error"]["field"], "resolution");

    r = handle_tessellate(R"({"group": "p2", "strokes": [{"points": [[-0.1, -0.05], [0.2, 0.1]]}]})");
    EXPECT_EQ(r.status, 422);
    const json e = json::parse(r.body)["error"];
    EXPECT_EQ(e["stage"], "sites");
    EXPECT_NE(e["message"].get<std::string>().find("orbit self-overlap"), std::string::npos);
}

TEST(Service, RequestOrderDoesNotMatter) {
    const std::vector<std::string> bodies{
        R"({"group": "p3", "strokes": [{"points": [[0.1, 0.1], [0.3, 0.2]]}], "resolution": 96})",
        R"({"group": "pmm", "strokes": [{"points": [[0.1, 0.3], [0.2, 0.35]]}], "resolution": 96})",
        R"({"group": "p4", "strokes": [{"points": [[0.1, 0.15], [0.3, 0.2]]}], "resolution": 96})"};
    auto strip = [](const ServiceResponse& r) {
        json j = json::parse(r.body);
        j.erase("timing_ms");
        return j.dump();
    };
    std::vector<std::string> forward, backward(bodies.size());
    for (const auto& b : bodies) forward.push_back(strip(handle_tessellate(b)));
    for (std::size_t k = bodies.size(); k-- > 0;) backward[k] = strip(handle_tessellate(bodies[k]));
    EXPECT_EQ(forward, backward);
}
