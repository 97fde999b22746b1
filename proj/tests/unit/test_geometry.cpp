#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symvoro/geometry.hpp"

using namespace symvoro;

namespace {

// Oracle: dense parameter sampling of every segment.
double sampled_distance(Point p, const SiteShape& c, int samples = 20000) {
    double best = 1e300;
    for (const Segment& s : c.segments) {
        for (int k = 0; k <= samples; ++k) best = std::min(best, distance(p, s.at(static_cast<double>(k) / samples)));
    }
    return best;
}

}  // namespace

TEST(PointSegment, FootInsideSegment) {
    EXPECT_DOUBLE_EQ(distance_point_segment({2, 1}, {{0, 0}, {4, 0}}), 1.0);
}

TEST(PointSegment, ClampedToEndpoint) {
    EXPECT_DOUBLE_EQ(distance_point_segment({-3, 4}, {{0, 0}, {4, 0}}), 5.0);
}

TEST(PointSegment, DegenerateSegmentIsAPoint) {
    EXPECT_DOUBLE_EQ(distance_point_segment({3, 4}, {{0, 0}, {0, 0}}), 5.0);
}

TEST(PointShape, OnTheShape) {
    const SiteShape c{{Segment{{0, 0}, {1, 0}}}};
    EXPECT_DOUBLE_EQ(distance_point_shape({0, 0}, c), 0.0);
}

TEST(PointShape, NearestOfTwoSegments) {
    const SiteShape c{{Segment{{0, 0}, {1, 0}}, Segment{{0, 0}, {0, 1}}}};
    EXPECT_NEAR(distance_point_shape({2, 2}, c), std::sqrt(5.0), 1e-12);
}

TEST(PointShape, MatchesDenseSampling) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Point> v;
        for (int k = 0; k < 6; ++k) v.push_back({u(rng), u(rng)});
        const SiteShape c = SiteShape::polyline(v);
        ASSERT_EQ(c.segments.size(), 5u);
        const Point p{u(rng), u(rng)};
        EXPECT_NEAR(distance_point_shape(p, c), sampled_distance(p, c), 1e-6);
    }
}

TEST(Isometry, IdentityLeavesShapeUnchanged) {
    const SiteShape c{{Segment{{1, 2}, {3, 5}}}};
    EXPECT_EQ(apply_isometry(Isometry2::identity(), c).segments, c.segments);
}

TEST(Isometry, HalfTurn) {
    const SiteShape c{{Segment{{1, 0}, {2, 0}}}};
    const SiteShape r = apply_isometry(Isometry2::rotation(std::numbers::pi), c);
    EXPECT_NEAR(r.segments[0].p0.x, -1.0, 1e-12);
    EXPECT_NEAR(r.segments[0].p0.y, 0.0, 1e-12);
    EXPECT_NEAR(r.segments[0].p1.x, -2.0, 1e-12);
    EXPECT_NEAR(r.segments[0].p1.y, 0.0, 1e-12);
}

TEST(Isometry, ReflectionAcrossYAxis) {
    const Isometry2 g = Isometry2::reflection(std::numbers::pi / 2);
    const SiteShape r = apply_isometry(g, SiteShape{{Segment{{1, 1}, {2, 3}}}});
    EXPECT_NEAR(r.segments[0].p0.x, -1.0, 1e-12);
    EXPECT_NEAR(r.segments[0].p0.y, 1.0, 1e-12);
    EXPECT_NEAR(r.segments[0].p1.x, -2.0, 1e-12);
    EXPECT_NEAR(r.segments[0].p1.y, 3.0, 1e-12);
    EXPECT_NEAR(g.determinant(), -1.0, 1e-12);
    EXPECT_TRUE(g.reverses_orientation());
}

TEST(Isometry, PreservesPairwiseDistances) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const Isometry2 g = compose(Isometry2::translation_by({0.3, -1.2}), Isometry2::reflection(0.7, {1, 2}));
    for (int k = 0; k < 100; ++k) {
        const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
        EXPECT_NEAR(distance(g(a), g(b)), distance(a, b), 1e-12);
    }
}

TEST(Isometry, DistanceFieldIsInvariant) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const SiteShape c = SiteShape::polyline(std::vector<Point>{{0, 0}, {1, 0.5}, {1.5, -0.2}});
    for (int k = 0; k < 50; ++k) {
        const Isometry2 g = compose(Isometry2::rotation(u(rng), {u(rng), u(rng)}), Isometry2::reflection(u(rng)));
        const Point p{u(rng), u(rng)};
        EXPECT_NEAR(distance_point_shape(g(p), apply_isometry(g, c)), distance_point_shape(p, c), 1e-9);
    }
}

TEST(Compose, IdentityIsNeutral) {
    const Isometry2 g = Isometry2::rotation(0.4, {1, -1});
    EXPECT_TRUE(compose(Isometry2::identity(), g).approx_equal(g, 1e-15));
}

TEST(Compose, TwoQuarterTurnsMakeAHalfTurn) {
    const Isometry2 q = Isometry2::rotation(std::numbers::pi / 2);
    EXPECT_TRUE(compose(q, q).approx_equal(Isometry2::rotation(std::numbers::pi), 1e-12));
}

TEST(Compose, ReflectionIsAnInvolution) {
    const Isometry2 r = Isometry2::reflection(0.0);
    EXPECT_TRUE(compose(r, r).approx_equal(Isometry2::identity(), 1e-12));
}

TEST(Compose, ActsAsFunctionComposition) {
    const Isometry2 a = Isometry2::rotation(1.1, {0.2, 0.3});
    const Isometry2 b = Isometry2::reflection(0.3, {-1, 0.5});
    const Point x{0.7, -2.1};
    const Point lhs = compose(a, b)(x);
    const Point rhs = a(b(x));
    EXPECT_NEAR(lhs.x, rhs.x, 1e-12);
    EXPECT_NEAR(lhs.y, rhs.y, 1e-12);
    EXPECT_TRUE(compose(a, b).is_valid());
}

TEST(Simple, SingleSegment) { EXPECT_TRUE(validate_simple(SiteShape{{Segment{{0, 0}, {1, 1}}}})); }

TEST(Simple, ZigZag) {
    EXPECT_TRUE(validate_simple(SiteShape::polyline(std::vector<Point>{{0, 1}, {1, 1}, {0, 0}, {1, 0}})));
}

TEST(Simple, BowtieCrossing) {
    EXPECT_FALSE(validate_simple(SiteShape::polyline(std::vector<Point>{{0, 0}, {1, 1}, {1, 0}, {0, 1}})));
}

TEST(Simple, FoldBack) {
    EXPECT_FALSE(validate_simple(SiteShape::polyline(std::vector<Point>{{0, 0}, {2, 0}, {1, 0}})));
}

TEST(Simple, EmptyShapeThrows) { EXPECT_THROW(validate_simple(SiteShape{}), GeometryError); }

TEST(SegmentSegment, CrossingAndApart) {
    EXPECT_DOUBLE_EQ(distance_segment_segment({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}), 0.0);
    EXPECT_DOUBLE_EQ(distance_segment_segment({{0, 0}, {1, 0}}, {{0, 2}, {1, 2}}), 2.0);
    EXPECT_TRUE(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}));
    EXPECT_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{1.5, 0}, {2, 0}}));
}
