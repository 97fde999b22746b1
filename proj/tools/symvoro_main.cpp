#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "symvoro/analysis.hpp"
#include "symvoro/parallel.hpp"
#include "symvoro/pipeline.hpp"
#include "symvoro/service.hpp"

namespace {

using namespace symvoro;

constexpr int kExitValidation = 1;
constexpr int kExitPipeline = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneError("<file>", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PipelineError("render", "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

int cmd_render(const std::string& scene_path, const std::string& out_dir) {
    const SceneFile scene = parse_scene(read_file(scene_path));
    const PipelineResult r = run_pipeline(scene);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    const std::string stem = std::filesystem::path(scene_path).stem().string();
    write_file(dir / (stem + ".png"), std::string_view(reinterpret_cast<const char*>(r.png.data()), r.png.size()));
    write_file(dir / (stem + ".svg"), r.svg);
    write_file(dir / (stem + ".report.json"), report_json(r));
    std::cout << "wrote " << (dir / stem).string() << ".{png,svg,report.json}\n";
    return 0;
}

int cmd_analyze(const std::string& scene_path, bool geometry) {
    const SceneFile scene = parse_scene(read_file(scene_path));
    std::cout << report_json(run_pipeline(scene), geometry);
    return 0;
}

int cmd_validate(const std::string& scene_path) {
    const SceneFile scene = parse_scene(read_file(scene_path));
    const SiteSet s = build_scene_sites(scene);
    const DeloneReport d = validate_delone(s);
    nlohmann::ordered_json j;
    j["valid"] = true;
    j["group"] = std::string(to_string(scene.group));
    j["strokes"] = scene.strokes.size();
    j["instances"] = s.instances.size();
    j["r0"] = d.r0_estimate;
    j["r1"] = d.r1_estimate;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_survey(const std::vector<std::string>& group_names, int trials, std::uint64_t seed, int resolution, int cells,
               bool as_json) {
    SurveyConfig cfg;
    for (const std::string& name : group_names) {
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
    try {
        rows = group_survey(sample_segment_stroke, cfg);
    } catch (const std::exception& e) {
        throw PipelineError("analysis", e.what());
    }

    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const GroupSurvey& g : rows) {
        nlohmann::ordered_json j;
        j["group"] = std::string(to_string(g.group));
        j["trials"] = g.trials;
        j["curved_trials"] = g.curved_trials;
        j["curved_fraction"] = g.curved_fraction;
        j["straight_length_fraction"] = g.mean_straight_length_fraction;
        j["mirror_axis_arcs"] = g.mirror_axis_arcs;
        j["mirror_axis_straight"] = g.mirror_axis_straight;
        if (g.fixed_polygon_hausdorff) j["fixed_polygon_hausdorff_px"] = *g.fixed_polygon_hausdorff / g.pixel_size;
        out.push_back(j);
    }
    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::printf("%-6s %7s %8s %9s %12s %12s\n", "group", "trials", "curved", "fraction", "straight_len", "mirror_arcs");
    for (const GroupSurvey& g : rows) {
        std::printf("%-6s %7d %8d %9.2f %12.3f %6zu/%-5zu\n", std::string(to_string(g.group)).c_str(), g.trials,
                    g.curved_trials, g.curved_fraction, g.mean_straight_length_fraction, g.mirror_axis_straight,
                    g.mirror_axis_arcs);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symvoro: curved tiles from Voronoi diagrams of symmetric line sites"};
    app.require_subcommand(1);
    bool deterministic = false;
    int workers = 0;
    app.add_flag("--deterministic", deterministic, "Run single-threaded");
    app.add_option("--workers", workers, "Worker threads (overrides SYMVORO_WORKERS)")->check(CLI::NonNegativeNumber);

    std::string scene_path;
    std::string out_dir = "out";
    auto* render = app.add_subcommand("render", "Render a scene to PNG, SVG and a JSON report");
    render->add_option("scene", scene_path, "Scene file")->required();
    render->add_option("-o,--out", out_dir, "Output directory");

    bool geometry = false;
    auto* analyze = app.add_subcommand("analyze", "Print the analysis report for a scene");
    analyze->add_option("scene", scene_path, "Scene file")->required();
    analyze->add_flag("--geometry", geometry, "Include arc polylines and cell outlines");

    auto* validate = app.add_subcommand("validate", "Check a scene and its site set");
    validate->add_option("scene", scene_path, "Scene file")->required();

    std::vector<std::string> groups;
    int trials = 20;
    std::uint64_t seed = 1;
    int resolution = 512;
    int cells = 2;
    bool as_json = false;
    auto* survey = app.add_subcommand("survey", "Random-stroke survey of curved and straight boundaries");
    survey->add_option("--groups", groups, "Groups to survey (default: all 17)");
    survey->add_option("--trials", trials, "Trials per group")->check(CLI::PositiveNumber);
    survey->add_option("--seed", seed, "Base seed");
    survey->add_option("--resolution", resolution, "Raster size")->check(CLI::Range(64, 2048));
    survey->add_option("--cells", cells, "Window size in lattice cells")->check(CLI::Range(1, 8));
    survey->add_flag("--json", as_json, "Print JSON instead of a table");

    ServiceConfig service;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--port", service.port, "Port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", service.host, "Bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }
    if (workers > 0) set_worker_count(workers);
    if (deterministic) set_worker_count(1);

    try {
        if (*render) return cmd_render(scene_path, out_dir);
        if (*analyze) return cmd_analyze(scene_path, geometry);
        if (*validate) return cmd_validate(scene_path);
        if (*survey) return cmd_survey(groups, trials, seed, resolution, cells, as_json);
        if (*serve_cmd) {
            std::cerr << "listening on " << service.host << ":" << service.port << "\n";
            if (!serve(service)) {
                std::cerr << "error: cannot listen on port " << service.port << "\n";
                return kExitPipeline;
            }
            return 0;
        }
    } catch (const SceneError& e) {
        std::cerr << "invalid scene: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PipelineError& e) {
        std::cerr << "pipeline error in " << e.stage() << ": " << e.message() << "\n";
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return 0;
}
