#include <gtest/gtest.h>

#include <random>

#include "../support/scenes.hpp"
#include "symvoro/voronoi.hpp"

using namespace symvoro;

namespace {

SiteSet two_points() {
    return custom_site_set({SiteShape::point({0.25, 0.5}), SiteShape::point({0.75, 0.5})}, {0, 0, 1, 1});
}

}  // namespace

TEST(Tessellate, PointPairHalves) {
    const RasterSpec spec{{0, 0, 1, 1}, 8, 8};
    const LabelMap m = tessellate(two_points(), spec);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) EXPECT_EQ(m.label(i, j), i < 4 ? 0 : 1) << i << "," << j;
    }
}

TEST(Tessellate, SingleSiteDistanceField) {
    const SiteShape c = SiteShape::polyline(std::vector<Point>{{0.2, 0.2}, {0.6, 0.7}, {0.9, 0.3}});
    const SiteSet s = custom_site_set({c}, {0, 0, 1, 1});
    const RasterSpec spec{{0, 0, 1, 1}, 32, 32};
    for (const LabelMap& m : {tessellate(s, spec), tessellate_accelerated(s, spec)}) {
        for (int j = 0; j < 32; ++j) {
            for (int i = 0; i < 32; ++i) {
                EXPECT_EQ(m.label(i, j), 0);
                EXPECT_DOUBLE_EQ(m.distance[spec.index(i, j)], distance_point_shape(spec.center(i, j), c));
            }
        }
    }
}

TEST(Tessellate, AcceleratedEqualsBrute) {
    std::mt19937_64 rng(99);
    for (GroupName g : {GroupName::p1, GroupName::pgg, GroupName::p4g, GroupName::p31m, GroupName::p6}) {
        const auto s = fixtures::random_scene(rng, g, 2);
        ASSERT_TRUE(s);
        const RasterSpec spec{{0, 0, 2, 2}, 128, 128};
        EXPECT_EQ(tessellate(*s, spec).labels, tessellate_accelerated(*s, spec).labels) << to_string(g);
    }
}

TEST(Tessellate, Errors) {
    SiteSet empty;
    empty.window = {0, 0, 1, 1};
    EXPECT_THROW(tessellate(empty, {{0, 0, 1, 1}, 16, 16}), GeometryError);
    EXPECT_THROW(tessellate_accelerated(empty, {{0, 0, 1, 1}, 16, 16}), GeometryError);
    EXPECT_THROW(tessellate(two_points(), {{0, 0, 1, 1}, 4, 4}), GeometryError);
    EXPECT_THROW(tessellate(two_points(), {{0, 0, 1, 1}, 16, 32}), GeometryError);
}

TEST(Boundaries, PointPairGivesOneVerticalArc) {
    const RasterSpec spec{{0, 0, 1, 1}, 64, 64};
    const auto arcs = extract_boundaries(tessellate(two_points(), spec));
    ASSERT_EQ(arcs.size(), 1u);
    for (const Point& p : arcs[0].points) EXPECT_NEAR(p.x, 0.5, 0.5 * spec.pixel_size() + 1e-12);
    EXPECT_LE(arcs[0].straightness, 1e-12);
    EXPECT_EQ(std::min(arcs[0].left_label, arcs[0].right_label), 0);
    EXPECT_EQ(std::max(arcs[0].left_label, arcs[0].right_label), 1);
}

TEST(Boundaries, DiagonalBisectorSnapsToLine) {
    // Mirror images across y = x: the bisector is the diagonal itself.
    const SiteShape a{{Segment{{0.2, 0.6}, {0.35, 0.8}}}};
    const SiteShape b{{Segment{{0.6, 0.2}, {0.8, 0.35}}}};
    const SiteSet s = custom_site_set({a, b}, {0, 0, 1, 1});
    const RasterSpec spec{{0, 0, 1, 1}, 128, 128};
    const LabelMap m = tessellate(s, spec);
    double coarse = 0.0;
    for (const BoundaryArc& arc : extract_boundaries(m)) coarse = std::max(coarse, arc.straightness);
    EXPECT_GT(coarse, 0.0);
    for (const BoundaryArc& arc : extract_boundaries(m, s)) {
        if (arc.points.size() < 3) continue;
        EXPECT_LE(arc.straightness, 1e-9);
        for (const Point& p : arc.points) EXPECT_NEAR(p.x, p.y, 1e-9);
    }
}

TEST(Boundaries, RefinementRejectsForeignSiteSet) {
    const RasterSpec spec{{0, 0, 1, 1}, 16, 16};
    const LabelMap m = tessellate(two_points(), spec);
    const SiteSet one = custom_site_set({SiteShape::point({0.5, 0.5})}, {0, 0, 1, 1});
    EXPECT_THROW(extract_boundaries(m, one), GeometryError);
}

TEST(Boundaries, UniformMapHasNoArcs) {
    const SiteSet s = custom_site_set({SiteShape::point({0.5, 0.5})}, {0, 0, 1, 1});
    EXPECT_TRUE(extract_boundaries(tessellate(s, {{0, 0, 1, 1}, 16, 16})).empty());
}

TEST(Boundaries, LeftLabelIsOnTheLeft) {
    const SiteSet s = two_points();
    const RasterSpec spec{{0, 0, 1, 1}, 32, 32};
    const LabelMap m = tessellate(s, spec);
    for (const BoundaryArc& a : extract_boundaries(m)) {
        const Vec2 d = a.points.back() - a.points.front();
        const Point probe = (a.points.front() + a.points.back()) * 0.5 + Vec2{-d.y, d.x} / norm(d) * spec.pixel_size();
        const auto [i, j] = spec.pixel_of(probe);
        EXPECT_EQ(m.label(i, j), a.left_label);
    }
}

TEST(Boundaries, ParabolaIsOneCurvedArc) {
    const Rect w = fixtures::parabola_window();
    const RasterSpec spec{w, 512, 512};
    const auto arcs = extract_boundaries(tessellate_accelerated(fixtures::parabola_sites(w), spec));
    ASSERT_EQ(arcs.size(), 1u);
    EXPECT_GT(arcs[0].straightness, 0.01 * 5);
    EXPECT_LE(fixtures::parabola_deviation(arcs, w), 1.5 * spec.pixel_size());
}

TEST(Equidistance, EqualPointsWithinPixelDiagonal) {
    const RasterSpec spec{{0, 0, 1, 1}, 64, 64};
    const SiteSet s = two_points();
    const auto arcs = extract_boundaries(tessellate(s, spec));
    EXPECT_LE(equidistance_check(s, arcs), std::sqrt(2.0) * spec.pixel_size());
}

TEST(Equidistance, RandomScenesAt512) {
    std::mt19937_64 rng(17);
    for (GroupName g : {GroupName::p2, GroupName::p3, GroupName::cm}) {
        const auto s = fixtures::random_scene(rng, g, 1, 1.0);
        ASSERT_TRUE(s);
        const RasterSpec spec{{0, 0, 1, 1}, 512, 512};
        const auto arcs = extract_boundaries(tessellate_accelerated(*s, spec));
        EXPECT_LE(equidistance_check(*s, arcs), 1.5 * spec.pixel_size()) << to_string(g);
    }
}

TEST(Straightness, Values) {
    const std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    EXPECT_NEAR(straightness(line), 0.0, 1e-15);
    const std::vector<Point> two{{0, 0}, {1, 0}};
    EXPECT_EQ(straightness(two), 0.0);
    const std::vector<Point> bent{{0, 0}, {1, 1}, {2, 0}};
    EXPECT_GT(straightness(bent), 0.1);
}
