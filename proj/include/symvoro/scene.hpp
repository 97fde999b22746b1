#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "symvoro/curves.hpp"
#include "symvoro/render.hpp"
#include "symvoro/wallpaper.hpp"

namespace symvoro {

/// A malformed scene. `field` is a JSON path such as "strokes[1].points";
/// line and column are set for syntax errors.
class SceneError : public std::invalid_argument {
public:
    SceneError(std::string field, const std::string& message, int line = 0, int column = 0);
    const std::string& field() const { return field_; }
    const std::string& message() const { return message_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string field_;
    std::string message_;
    int line_;
    int column_;
};

enum class StrokeKind { Polyline, Hermite, CatmullRom, Bezier };

std::string_view to_string(StrokeKind k);

struct StrokeSpec {
    StrokeKind kind = StrokeKind::Polyline;
    std::vector<Point> points;
    /// Hermite only: one tangent per point.
    std::vector<Vec2> tangents;
    int flatten_levels = kDefaultFlattenLevels;
    /// Catmull-Rom only.
    Parameterization parameterization = Parameterization::Uniform;

    friend bool operator==(const StrokeSpec&, const StrokeSpec&) = default;
};

struct CellsWindow {
    int m = 2;
    int n = 2;
    friend bool operator==(const CellsWindow&, const CellsWindow&) = default;
};

inline constexpr int kMaxResolution = 2048;

struct SceneFile {
    GroupName group = GroupName::p1;
    double scale = 1.0;
    std::vector<StrokeSpec> strokes;
    std::variant<Rect, CellsWindow> window = CellsWindow{};
    /// Raster width in pixels; the height follows from the window aspect.
    int resolution = 512;
    std::uint64_t seed = 0;
    RenderOptions render;

    friend bool operator==(const SceneFile&, const SceneFile&) = default;
};

/// Strict parse: unknown keys, wrong types, non-finite numbers and unknown
/// groups raise SceneError.
SceneFile parse_scene(std::string_view text);
std::string serialize_scene(const SceneFile& s);

/// Window in world units. "cells" windows span m x n lattice-constant squares from the origin.
Rect scene_window(const SceneFile& s);

/// Raster for the scene: width = resolution, height rounded from the aspect,
/// and the window's top edge nudged so pixels stay square.
RasterSpec scene_raster(const SceneFile& s);

/// Flattened site shape of one stroke. Throws GeometryError on degenerate input.
SiteShape stroke_shape(const StrokeSpec& stroke);

}  // namespace symvoro
