#include "symvoro/render.hpp"

#include <png.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace symvoro {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

struct Hsv {
    double h, s, v;
};

Hsv draw_color(std::uint64_t seed, int label, int attempt) {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(label)));
    k = splitmix64(k ^ (static_cast<std::uint64_t>(attempt) << 32));
    const double h = unit(k);
    const double s = 0.35 + 0.4 * unit(splitmix64(k + 1));
    const double v = 0.7 + 0.25 * unit(splitmix64(k + 2));
    return {h, s, v};
}

double hue_gap(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

constexpr int kHueSpreadAttempts = 32;
constexpr double kMinHueGap = 0.05;

void put(Image& img, int x, int y, const Rgb& c) {
    std::copy(c.begin(), c.end(), img.rgb.begin() + (static_cast<std::size_t>(y) * img.width + x) * 3);
}

// Paints every pixel whose centre is within `radius` (world units) of the segment.
void stamp_segment(Image& img, const RasterSpec& spec, const Segment& s, double radius, const Rgb& c) {
    const Rect b = s.bounds().expanded(radius);
    if (!b.intersects(spec.window)) return;
    const auto lo = spec.pixel_of({b.xmin, b.ymin});
    const auto hi = spec.pixel_of({b.xmax, b.ymax});
    const double r2 = radius * radius;
    for (int j = std::max(lo[1], 0); j <= std::min(hi[1], spec.height - 1); ++j) {
        for (int i = std::max(lo[0], 0); i <= std::min(hi[0], spec.width - 1); ++i) {
            if (distance2_point_segment(spec.center(i, j), s) <= r2) put(img, i, spec.height - 1 - j, c);
        }
    }
}

void append_number(std::string& out, double v) {
    char buf[32];
    if (std::abs(v) < 1e-12) v = 0.0;
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    out.append(buf, res.ptr);
}

void append_polyline(std::string& out, std::span<const Point> pts) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
        out += k == 0 ? "M" : " L";
        append_number(out, pts[k].x);
        out += ' ';
        append_number(out, pts[k].y);
    }
}

std::string hex_color(const Rgb& c) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s = "#";
    for (std::uint8_t v : c) {
        s += digits[v >> 4];
        s += digits[v & 15];
    }
    return s;
}

}  // namespace

Rgb Palette::at(int label) const {
    const auto it = assignment.find(label);
    if (it == assignment.end()) throw RenderError("palette has no colour for label " + std::to_string(label));
    return it->second;
}

void RenderOptions::validate() const {
    if (boundary_width < 1) throw RenderError("boundary_width must be at least 1");
}

Rgb hsv_to_rgb(double h, double s, double v) {
    h = (h - std::floor(h)) * 6.0;
    const int sector = std::min(static_cast<int>(h), 5);
    const double f = h - sector;
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    double r = v, g = t, b = p;
    switch (sector) {
        case 0: r = v; g = t; b = p; break;
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
    auto byte = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); };
    return {byte(r), byte(g), byte(b)};
}

Palette make_palette(const LabelMap& m, std::uint64_t seed, ColorBy color_by) {
    const std::vector<int>& labels = color_by == ColorBy::Orbit ? m.orbit_labels : m.labels;
    const int w = m.spec.width;
    const int h = m.spec.height;
    std::map<int, std::set<int>> neighbours;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const int a = labels[m.spec.index(i, j)];
            neighbours[a];
            if (i + 1 < w) {
                const int b = labels[m.spec.index(i + 1, j)];
                if (a != b) {
                    neighbours[a].insert(b);
                    neighbours[b].insert(a);
                }
            }
            if (j + 1 < h) {
                const int b = labels[m.spec.index(i, j + 1)];
                if (a != b) {
                    neighbours[a].insert(b);
                    neighbours[b].insert(a);
                }
            }
        }
    }

    Palette p;
    p.seed = seed;
    p.color_by = color_by;
    std::map<int, double> hues;
    for (const auto& [label, adjacent] : neighbours) {
        for (int attempt = 0;; ++attempt) {
            const Hsv c = draw_color(seed, label, attempt);
            const Rgb rgb = hsv_to_rgb(c.h, c.s, c.v);
            const bool clash = std::any_of(adjacent.begin(), adjacent.end(), [&](int other) {
                const auto it = p.assignment.find(other);
                if (it == p.assignment.end()) return false;
                if (it->second == rgb) return true;
                return attempt < kHueSpreadAttempts && hue_gap(hues.at(other), c.h) < kMinHueGap;
            });
            if (!clash) {
                p.assignment[label] = rgb;
                hues[label] = c.h;
                break;
            }
        }
    }
    return p;
}

std::size_t count_adjacent_collisions(const LabelMap& m, const Palette& p) {
    const std::vector<int>& labels = p.color_by == ColorBy::Orbit ? m.orbit_labels : m.labels;
    std::set<std::pair<int, int>> bad;
    const int w = m.spec.width;
    const int h = m.spec.height;
    auto check = [&](int a, int b) {
        if (a != b && p.at(a) == p.at(b)) bad.insert({std::min(a, b), std::max(a, b)});
    };
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const int a = labels[m.spec.index(i, j)];
            if (i + 1 < w) check(a, labels[m.spec.index(i + 1, j)]);
            if (j + 1 < h) check(a, labels[m.spec.index(i, j + 1)]);
        }
    }
    return bad.size();
}

Rgb Image::pixel(int x, int y) const {
    const std::size_t k = (static_cast<std::size_t>(y) * width + x) * 3;
    return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

Image render_image(const LabelMap& m, std::span<const BoundaryArc> arcs, std::span<const SiteInstance> sites,
                   const Palette& palette, const RenderOptions& opts) {
    opts.validate();
    const RasterSpec& spec = m.spec;
    if (m.labels.size() != static_cast<std::size_t>(spec.width) * spec.height ||
        m.orbit_labels.size() != m.labels.size()) {
        throw RenderError("label map does not match its raster dimensions");
    }
    if (palette.color_by != opts.color_by) throw RenderError("palette was built for a different colouring mode");
    const std::vector<int>& labels = opts.color_by == ColorBy::Orbit ? m.orbit_labels : m.labels;

    Image img;
    img.width = spec.width;
    img.height = spec.height;
    img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    for (int j = 0; j < spec.height; ++j) {
        for (int i = 0; i < spec.width; ++i) put(img, i, spec.height - 1 - j, palette.at(labels[spec.index(i, j)]));
    }

    const double px = spec.pixel_size();
    if (opts.show_sites) {
        for (const SiteInstance& inst : sites) {
            for (const Segment& s : inst.shape.segments) stamp_segment(img, spec, s, 1.0 * px, opts.site_color);
        }
    }
    if (opts.show_boundaries) {
        const double radius = 0.5 * opts.boundary_width * px;
        for (const BoundaryArc& arc : arcs) {
            if (arc.points.size() == 1) stamp_segment(img, spec, {arc.points[0], arc.points[0]}, radius, opts.boundary_color);
            for (std::size_t k = 1; k < arc.points.size(); ++k) {
                stamp_segment(img, spec, {arc.points[k - 1], arc.points[k]}, radius, opts.boundary_color);
            }
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.rgb.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
        throw RenderError("image buffer does not match its dimensions");
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw RenderError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw RenderError("png_create_info_struct failed");
    }
    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw RenderError("PNG encoding failed");
    }
    png_set_write_fn(
        png, &out,
        [](png_structp p, png_bytep data, png_size_t n) {
            auto* buf = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
            buf->insert(buf->end(), data, data + n);
        },
        nullptr);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

std::vector<std::uint8_t> render_png(const LabelMap& m, std::span<const BoundaryArc> arcs,
                                     std::span<const SiteInstance> sites, const Palette& palette,
                                     const RenderOptions& opts) {
    return encode_png(render_image(m, arcs, sites, palette, opts));
}

std::string export_svg(std::span<const BoundaryArc> arcs, std::span<const SiteInstance> sites, const Rect& window,
                       const RenderOptions& opts) {
    opts.validate();
    if (window.degenerate()) throw RenderError("degenerate window");
    const double px_hint = window.width() / 512.0;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    append_number(out, window.xmin);
    out += ' ';
    append_number(out, -window.ymax);
    out += ' ';
    append_number(out, window.width());
    out += ' ';
    append_number(out, window.height());
    out += "\">\n<rect x=\"";
    append_number(out, window.xmin);
    out += "\" y=\"";
    append_number(out, -window.ymax);
    out += "\" width=\"";
    append_number(out, window.width());
    out += "\" height=\"";
    append_number(out, window.height());
    out += "\" fill=\"" + hex_color(opts.background) + "\"/>\n";
    out += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";

    out += "<g class=\"sites\" stroke=\"" + hex_color(opts.site_color) + "\" stroke-width=\"";
    append_number(out, 2.0 * px_hint);
    out += "\">\n";
    for (const SiteInstance& inst : sites) {
        out += "<path d=\"";
        append_polyline(out, inst.shape.vertices());
        out += "\"/>\n";
    }
    out += "</g>\n<g class=\"boundaries\" stroke=\"" + hex_color(opts.boundary_color) + "\" stroke-width=\"";
    append_number(out, opts.boundary_width * px_hint);
    out += "\">\n";
    for (const BoundaryArc& arc : arcs) {
        out += "<path d=\"";
        append_polyline(out, arc.points);
        out += "\"/>\n";
    }
    out += "</g>\n</g>\n</svg>\n";
    return out;
}

}  // namespace symvoro
