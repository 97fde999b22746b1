#include "symvoro/scene.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace symvoro {

using nlohmann::json;
using nlohmann::ordered_json;

SceneError::SceneError(std::string field, const std::string& message, int line, int column)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                           message
                                     : field + ": " + message),
      field_(std::move(field)),
      message_(message),
      line_(line),
      column_(column) {}

std::string_view to_string(StrokeKind k) {
    switch (k) {
        case StrokeKind::Polyline: return "polyline";
        case StrokeKind::Hermite: return "hermite";
        case StrokeKind::CatmullRom: return "catmullrom";
        case StrokeKind::Bezier: return "bezier";
    }
    return "polyline";
}

namespace {

void require_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    const std::set<std::string_view> keys(allowed);
    for (const auto& [key, value] : obj.items()) {
        if (!keys.contains(key)) {
            throw SceneError(path.empty() ? key : path + "." + key, "unknown field");
        }
    }
}

const json& object_at(const json& j, const std::string& path) {
    if (!j.is_object()) throw SceneError(path.empty() ? "<root>" : path, "expected an object");
    return j;
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw SceneError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SceneError(path, "number is not finite");
    return v;
}

long long integer_at(const json& j, const std::string& path, long long lo, long long hi) {
    if (!j.is_number_integer()) throw SceneError(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(hi)) {
        throw SceneError(path, "must be at most " + std::to_string(hi));
    }
    const long long v = j.get<long long>();
    if (v < lo || v > hi) {
        throw SceneError(path, "must be between " + std::to_string(lo) + " and " + std::to_string(hi));
    }
    return v;
}

bool bool_at(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw SceneError(path, "expected true or false");
    return j.get<bool>();
}

std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) throw SceneError(path, "expected a string");
    return j.get<std::string>();
}

Point point_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw SceneError(path, "expected [x, y]");
    return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

std::vector<Point> points_at(const json& j, const std::string& path) {
    if (!j.is_array()) throw SceneError(path, "expected an array of [x, y] pairs");
    std::vector<Point> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(point_at(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

StrokeSpec parse_stroke(const json& j, const std::string& path) {
    object_at(j, path);
    require_keys(j, path, {"kind", "points", "tangents", "flatten_levels", "parameterization"});
    StrokeSpec s;
    const std::string kind = j.contains("kind") ? string_at(j["kind"], path + ".kind") : "polyline";
    if (kind == "polyline") {
        s.kind = StrokeKind::Polyline;
    } else if (kind == "hermite") {
        s.kind = StrokeKind::Hermite;
    } else if (kind == "catmullrom") {
        s.kind = StrokeKind::CatmullRom;
    } else if (kind == "bezier") {
        s.kind = StrokeKind::Bezier;
    } else {
        throw SceneError(path + ".kind", "unknown stroke kind \"" + kind + "\"");
    }
    if (!j.contains("points")) throw SceneError(path + ".points", "missing");
    s.points = points_at(j["points"], path + ".points");
    if (s.points.empty()) throw SceneError(path + ".points", "stroke has no points");

    if (j.contains("tangents")) {
        if (s.kind != StrokeKind::Hermite) throw SceneError(path + ".tangents", "only hermite strokes take tangents");
        s.tangents = points_at(j["tangents"], path + ".tangents");
    }
    if (j.contains("flatten_levels")) {
        s.flatten_levels = static_cast<int>(integer_at(j["flatten_levels"], path + ".flatten_levels", 0, 16));
    }
    if (j.contains("parameterization")) {
        if (s.kind != StrokeKind::CatmullRom) {
            throw SceneError(path + ".parameterization", "only catmullrom strokes take a parameterization");
        }
        const std::string p = string_at(j["parameterization"], path + ".parameterization");
        if (p == "uniform") {
            s.parameterization = Parameterization::Uniform;
        } else if (p == "centripetal") {
            s.parameterization = Parameterization::Centripetal;
        } else {
            throw SceneError(path + ".parameterization", "expected \"uniform\" or \"centripetal\"");
        }
    }

    switch (s.kind) {
        case StrokeKind::Polyline:
            break;
        case StrokeKind::Hermite:
            if (s.points.size() < 2) throw SceneError(path + ".points", "hermite strokes need at least 2 points");
            if (s.tangents.size() != s.points.size()) {
                throw SceneError(path + ".tangents", "hermite strokes need one tangent per point");
            }
            break;
        case StrokeKind::CatmullRom:
            if (s.points.size() < 2) throw SceneError(path + ".points", "catmullrom strokes need at least 2 points");
            for (std::size_t k = 1; k < s.points.size(); ++k) {
                if (s.points[k] == s.points[k - 1]) {
                    throw SceneError(path + ".points", "repeated consecutive point at index " + std::to_string(k));
                }
            }
            break;
        case StrokeKind::Bezier:
            if (s.points.size() < 4 || (s.points.size() - 1) % 3 != 0) {
                throw SceneError(path + ".points", "bezier strokes need 3k+1 control points (k >= 1)");
            }
            break;
    }
    return s;
}

Rgb color_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw SceneError(path, "expected [r, g, b]");
    Rgb c{};
    for (std::size_t k = 0; k < 3; ++k) {
        c[k] = static_cast<std::uint8_t>(integer_at(j[k], path + "[" + std::to_string(k) + "]", 0, 255));
    }
    return c;
}

RenderOptions parse_render(const json& j) {
    object_at(j, "render");
    require_keys(j, "render", {"show_sites", "show_boundaries", "boundary_width", "color_by", "background"});
    RenderOptions r;
    if (j.contains("show_sites")) r.show_sites = bool_at(j["show_sites"], "render.show_sites");
    if (j.contains("show_boundaries")) r.show_boundaries = bool_at(j["show_boundaries"], "render.show_boundaries");
    if (j.contains("boundary_width")) {
        r.boundary_width = static_cast<int>(integer_at(j["boundary_width"], "render.boundary_width", 1, 64));
    }
    if (j.contains("color_by")) {
        const std::string c = string_at(j["color_by"], "render.color_by");
        if (c == "instance") {
            r.color_by = ColorBy::Instance;
        } else if (c == "orbit") {
            r.color_by = ColorBy::Orbit;
        } else {
            throw SceneError("render.color_by", "expected \"instance\" or \"orbit\"");
        }
    }
    if (j.contains("background")) r.background = color_at(j["background"], "render.background");
    return r;
}

std::variant<Rect, CellsWindow> parse_window(const json& j) {
    object_at(j, "window");
    if (j.contains("cells")) {
        require_keys(j, "window", {"cells"});
        const json& c = j["cells"];
        if (!c.is_array() || c.size() != 2) throw SceneError("window.cells", "expected [m, n]");
        return CellsWindow{static_cast<int>(integer_at(c[0], "window.cells[0]", 1, 64)),
                           static_cast<int>(integer_at(c[1], "window.cells[1]", 1, 64))};
    }
    require_keys(j, "window", {"xmin", "ymin", "xmax", "ymax"});
    Rect r;
    for (const char* key : {"xmin", "ymin", "xmax", "ymax"}) {
        if (!j.contains(key)) throw SceneError(std::string("window.") + key, "missing");
    }
    r.xmin = number_at(j["xmin"], "window.xmin");
    r.ymin = number_at(j["ymin"], "window.ymin");
    r.xmax = number_at(j["xmax"], "window.xmax");
    r.ymax = number_at(j["ymax"], "window.ymax");
    if (!(r.xmax > r.xmin)) throw SceneError("window.xmax", "must exceed xmin");
    if (!(r.ymax > r.ymin)) throw SceneError("window.ymax", "must exceed ymin");
    return r;
}

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

ordered_json point_json(Point p) { return ordered_json::array({p.x, p.y}); }

}  // namespace

SceneFile parse_scene(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // byte is one past the offending character
        const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw SceneError("<root>", what, line, column);
    } catch (const json::out_of_range& e) {
        throw SceneError("<root>", "number is not finite or out of range");
    }
    object_at(root, "");
    require_keys(root, "", {"group", "scale", "strokes", "window", "resolution", "seed", "render"});

    SceneFile s;
    if (!root.contains("group")) throw SceneError("group", "missing");
    const std::string group = string_at(root["group"], "group");
    const auto g = parse_group_name(group);
    if (!g) throw SceneError("group", "unknown wallpaper group \"" + group + "\"");
    s.group = *g;

    if (root.contains("scale")) {
        s.scale = number_at(root["scale"], "scale");
        if (!(s.scale > 0.0)) throw SceneError("scale", "must be positive");
    }
    if (!root.contains("strokes")) throw SceneError("strokes", "missing");
    const json& strokes = root["strokes"];
    if (!strokes.is_array()) throw SceneError("strokes", "expected an array");
    if (strokes.empty()) throw SceneError("strokes", "at least one stroke is required");
    for (std::size_t k = 0; k < strokes.size(); ++k) {
        s.strokes.push_back(parse_stroke(strokes[k], "strokes[" + std::to_string(k) + "]"));
    }
    if (root.contains("window")) s.window = parse_window(root["window"]);
    if (root.contains("resolution")) {
        s.resolution = static_cast<int>(integer_at(root["resolution"], "resolution", 8, 1 << 16));
    }
    if (root.contains("seed")) {
        const json& seed = root["seed"];
        if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() && seed.get<long long>() < 0)) {
            throw SceneError("seed", "expected a non-negative integer");
        }
        s.seed = seed.get<std::uint64_t>();
    }
    if (root.contains("render")) s.render = parse_render(root["render"]);

    const Rect w = scene_window(s);
    const double height = s.resolution * w.height() / w.width();
    if (!(height >= 7.5)) throw SceneError("resolution", "raster would be fewer than 8 pixels tall");
    if (height > (1 << 16)) throw SceneError("resolution", "raster would be too tall");
    return s;
}

std::string serialize_scene(const SceneFile& s) {
    ordered_json root;
    root["group"] = std::string(to_string(s.group));
    root["scale"] = s.scale;
    ordered_json strokes = ordered_json::array();
    for (const StrokeSpec& st : s.strokes) {
        ordered_json j;
        j["kind"] = std::string(to_string(st.kind));
        ordered_json pts = ordered_json::array();
        for (Point p : st.points) pts.push_back(point_json(p));
        j["points"] = pts;
        if (st.kind == StrokeKind::Hermite) {
            ordered_json tg = ordered_json::array();
            for (Vec2 t : st.tangents) tg.push_back(point_json(t));
            j["tangents"] = tg;
        }
        j["flatten_levels"] = st.flatten_levels;
        if (st.kind == StrokeKind::CatmullRom) {
            j["parameterization"] = st.parameterization == Parameterization::Centripetal ? "centripetal" : "uniform";
        }
        strokes.push_back(j);
    }
    root["strokes"] = strokes;
    if (const auto* c = std::get_if<CellsWindow>(&s.window)) {
        root["window"] = {{"cells", {c->m, c->n}}};
    } else {
        const Rect& r = std::get<Rect>(s.window);
        ordered_json w;
        w["xmin"] = r.xmin;
        w["ymin"] = r.ymin;
        w["xmax"] = r.xmax;
        w["ymax"] = r.ymax;
        root["window"] = w;
    }
    root["resolution"] = s.resolution;
    root["seed"] = s.seed;
    ordered_json r;
    r["show_sites"] = s.render.show_sites;
    r["show_boundaries"] = s.render.show_boundaries;
    r["boundary_width"] = s.render.boundary_width;
    r["color_by"] = s.render.color_by == ColorBy::Orbit ? "orbit" : "instance";
    r["background"] = {s.render.background[0], s.render.background[1], s.render.background[2]};
    root["render"] = r;
    return root.dump(2) + "\n";
}

Rect scene_window(const SceneFile& s) {
    if (const auto* c = std::get_if<CellsWindow>(&s.window)) return {0.0, 0.0, c->m * s.scale, c->n * s.scale};
    return std::get<Rect>(s.window);
}

RasterSpec scene_raster(const SceneFile& s) {
    Rect w = scene_window(s);
    const int height = std::max(1, static_cast<int>(std::lround(s.resolution * w.height() / w.width())));
    w.ymax = w.ymin + height * (w.width() / s.resolution);
    return {w, s.resolution, height};
}

SiteShape stroke_shape(const StrokeSpec& stroke) {
    const int levels = stroke.flatten_levels;
    switch (stroke.kind) {
        case StrokeKind::Polyline:
            if (stroke.points.size() == 1) return SiteShape::point(stroke.points[0]);
            return SiteShape::polyline(stroke.points);
        case StrokeKind::Hermite: {
            if (stroke.points.size() < 2 || stroke.tangents.size() != stroke.points.size()) {
                throw GeometryError("hermite stroke needs matching points and tangents");
            }
            std::vector<CubicBezier> chain;
            for (std::size_t k = 0; k + 1 < stroke.points.size(); ++k) {
                chain.push_back(hermite_to_bezier(
                    {stroke.points[k], stroke.points[k + 1], stroke.tangents[k], stroke.tangents[k + 1]}));
            }
            return flatten_chain(chain, levels);
        }
        case StrokeKind::CatmullRom:
            return flatten_chain(catmullrom_to_beziers({stroke.points, stroke.parameterization}), levels);
        case StrokeKind::Bezier: {
            if (stroke.points.size() < 4 || (stroke.points.size() - 1) % 3 != 0) {
                throw GeometryError("bezier stroke needs 3k+1 control points");
            }
            std::vector<CubicBezier> chain;
            for (std::size_t k = 0; k + 3 < stroke.points.size(); k += 3) {
                chain.push_back({stroke.points[k], stroke.points[k + 1], stroke.points[k + 2], stroke.points[k + 3]});
            }
            return flatten_chain(chain, levels);
        }
    }
    throw GeometryError("unknown stroke kind");
}

}  // namespace symvoro
