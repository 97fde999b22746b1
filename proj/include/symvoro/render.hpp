#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symvoro/voronoi.hpp"

namespace symvoro {

using Rgb = std::array<std::uint8_t, 3>;

class RenderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ColorBy { Instance, Orbit };

/// Region colour per label. Which labels (instance ids or orbit indices)
/// depends on the ColorBy used to build it.
struct Palette {
    std::uint64_t seed = 0;
    ColorBy color_by = ColorBy::Instance;
    std::map<int, Rgb> assignment;

    Rgb at(int label) const;
};

struct RenderOptions {
    bool show_sites = true;
    bool show_boundaries = true;
    /// Boundary stroke width in pixels, at least 1.
    int boundary_width = 1;
    ColorBy color_by = ColorBy::Instance;
    Rgb background{255, 255, 255};
    Rgb site_color{200, 200, 200};
    Rgb boundary_color{40, 40, 40};

    void validate() const;
    friend bool operator==(const RenderOptions&, const RenderOptions&) = default;
};

Rgb hsv_to_rgb(double h, double s, double v);

/// Pseudo-random HSV colour per region; a region whose colour matches (or,
/// for the first attempts, nearly matches) an already coloured 4-neighbour is
/// re-drawn from hash(seed, label, attempt).
Palette make_palette(const LabelMap& m, std::uint64_t seed, ColorBy color_by = ColorBy::Instance);

/// Pairs of distinct 4-adjacent labels sharing one colour.
std::size_t count_adjacent_collisions(const LabelMap& m, const Palette& p);

/// Flat RGB raster, row 0 at the top of the image (window.ymax).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    Rgb pixel(int x, int y) const;
};

Image render_image(const LabelMap& m, std::span<const BoundaryArc> arcs, std::span<const SiteInstance> sites,
                   const Palette& palette, const RenderOptions& opts);

std::vector<std::uint8_t> encode_png(const Image& img);

/// 8-bit RGB, non-interlaced PNG of render_image.
std::vector<std::uint8_t> render_png(const LabelMap& m, std::span<const BoundaryArc> arcs,
                                     std::span<const SiteInstance> sites, const Palette& palette,
                                     const RenderOptions& opts);

/// SVG 1.1 with viewBox equal to the window in world units: one path per arc
/// and one per site instance.
std::string export_svg(std::span<const BoundaryArc> arcs, std::span<const SiteInstance> sites, const Rect& window,
                       const RenderOptions& opts);

}  // namespace symvoro
