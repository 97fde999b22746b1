#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "../support/scenes.hpp"
#include "symvoro/render.hpp"

using namespace symvoro;

namespace {

LabelMap two_halves(int n) {
    const SiteSet s = custom_site_set({SiteShape::point({0.25, 0.5}), SiteShape::point({0.75, 0.5})}, {0, 0, 1, 1});
    return tessellate(s, {{0, 0, 1, 1}, n, n});
}

// Many small regions with irregular adjacency.
LabelMap stress_map() {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SiteShape> pts;
    for (int k = 0; k < 100; ++k) pts.push_back(SiteShape::point({u(rng), u(rng)}));
    return tessellate_accelerated(custom_site_set(pts, {0, 0, 1, 1}), {{0, 0, 1, 1}, 128, 128});
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Palette, UniformMapSingleColour) {
    const SiteSet s = custom_site_set({SiteShape::point({0.5, 0.5})}, {0, 0, 1, 1});
    const Palette p = make_palette(tessellate(s, {{0, 0, 1, 1}, 8, 8}), 3);
    EXPECT_EQ(p.assignment.size(), 1u);
}

TEST(Palette, TwoRegionsTwoColours) {
    const Palette p = make_palette(two_halves(8), 3);
    ASSERT_EQ(p.assignment.size(), 2u);
    EXPECT_NE(p.at(0), p.at(1));
}

TEST(Palette, HundredRegionsNoAdjacentCollisions) {
    const LabelMap m = stress_map();
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Palette p = make_palette(m, seed);
        ASSERT_EQ(count_adjacent_collisions(m, p), 0u) << "seed " << seed;
    }
}

TEST(Palette, DeterministicAndWithinHsvRanges) {
    const LabelMap m = stress_map();
    const Palette a = make_palette(m, 77);
    const Palette b = make_palette(m, 77);
    EXPECT_EQ(a.assignment, b.assignment);
    for (const auto& [label, c] : a.assignment) {
        const int mx = std::max({c[0], c[1], c[2]});
        const int mn = std::min({c[0], c[1], c[2]});
        EXPECT_GE(mx, static_cast<int>(0.7 * 255) - 1);
        EXPECT_LE(mx, static_cast<int>(0.95 * 255) + 1);
        const double sat = static_cast<double>(mx - mn) / mx;
        EXPECT_GE(sat, 0.35 - 0.01);
        EXPECT_LE(sat, 0.75 + 0.01);
    }
}

TEST(HsvToRgb, PrimaryHues) {
    EXPECT_EQ(hsv_to_rgb(0.0, 1.0, 1.0), (Rgb{255, 0, 0}));
    EXPECT_EQ(hsv_to_rgb(1.0 / 3.0, 1.0, 1.0), (Rgb{0, 255, 0}));
    EXPECT_EQ(hsv_to_rgb(2.0 / 3.0, 1.0, 1.0), (Rgb{0, 0, 255}));
    EXPECT_EQ(hsv_to_rgb(0.5, 0.0, 0.5), (Rgb{128, 128, 128}));
}

TEST(RenderPng, TwoHalvesMapColours) {
    const LabelMap m = two_halves(8);
    const Palette p = make_palette(m, 1);
    RenderOptions opts;
    opts.show_boundaries = false;
    opts.show_sites = false;
    const Image img = render_image(m, {}, {}, p, opts);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) EXPECT_EQ(img.pixel(x, y), p.at(x < 4 ? 0 : 1));
    }
    const auto png = render_png(m, {}, {}, p, opts);
    ASSERT_GT(png.size(), 8u);
    EXPECT_EQ(std::vector<std::uint8_t>(png.begin(), png.begin() + 8),
              (std::vector<std::uint8_t>{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a}));
    // IHDR: width, height, bit depth 8, colour type 2 (RGB), interlace 0.
    EXPECT_EQ(png[19], 8);
    EXPECT_EQ(png[23], 8);
    EXPECT_EQ(png[24], 8);
    EXPECT_EQ(png[25], 2);
    EXPECT_EQ(png[28], 0);
}

TEST(RenderPng, SameInputSameBytes) {
    const LabelMap m = stress_map();
    const auto arcs = extract_boundaries(m);
    const Palette p = make_palette(m, 5);
    EXPECT_EQ(render_png(m, arcs, {}, p, {}), render_png(m, arcs, {}, p, {}));
}

TEST(RenderPng, SitesAreGrey) {
    const SiteSet s = build_site_set({SiteShape{{Segment{{0.2, 0.2}, {0.6, 0.5}}}}}, GroupName::p1, 1.0, {0, 0, 1, 1});
    const RasterSpec spec{{0, 0, 1, 1}, 64, 64};
    const LabelMap m = tessellate(s, spec);
    RenderOptions opts;
    const Image img = render_image(m, {}, s.instances, make_palette(m, 0), opts);
    const auto [i, j] = spec.pixel_of({0.4, 0.35});
    EXPECT_EQ(img.pixel(i, spec.height - 1 - j), opts.site_color);
}

TEST(RenderPng, Errors) {
    LabelMap m = two_halves(8);
    const Palette p = make_palette(m, 1);
    RenderOptions bad;
    bad.boundary_width = 0;
    EXPECT_THROW(render_png(m, {}, {}, p, bad), RenderError);
    RenderOptions orbit;
    orbit.color_by = ColorBy::Orbit;
    EXPECT_THROW(render_png(m, {}, {}, p, orbit), RenderError);
    m.labels.pop_back();
    EXPECT_THROW(render_png(m, {}, {}, p, {}), RenderError);
}

TEST(Svg, EmptyArcsOnlyBackground) {
    const std::string svg = export_svg({}, {}, {0, 0, 2, 1}, {});
    EXPECT_NE(svg.find("viewBox=\"0 -1 2 1\""), std::string::npos);
    EXPECT_EQ(count(svg, "<path"), 0u);
    EXPECT_EQ(count(svg, "<rect"), 1u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, StraightArcIsATwoPointPath) {
    BoundaryArc a;
    a.points = {{0.5, 0.0}, {0.5, 1.0}};
    const std::string svg = export_svg(std::vector<BoundaryArc>{a}, {}, {0, 0, 1, 1}, {});
    EXPECT_NE(svg.find("d=\"M0.5 0 L0.5 1\""), std::string::npos);
}

TEST(Svg, PathCountMatchesArcsPlusSites) {
    const SiteSet s = build_site_set({SiteShape{{Segment{{0.1, 0.1}, {0.35, 0.3}}}}}, GroupName::p2, 1.0, {0, 0, 2, 2});
    const LabelMap m = tessellate_accelerated(s, {{0, 0, 2, 2}, 256, 256});
    const auto arcs = extract_boundaries(m);
    const std::string svg = export_svg(arcs, s.instances, s.window, {});
    EXPECT_EQ(count(svg, "<path"), arcs.size() + s.instances.size());
}
