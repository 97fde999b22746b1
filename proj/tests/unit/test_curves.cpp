#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symvoro/curves.hpp"

using namespace symvoro;

namespace {

Point hermite_basis(const HermiteSegment& h, double t) {
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h.p0 * h00 + h.m0 * h10 + h.p1 * h01 + h.m1 * h11;
}

void expect_near(Point a, Point b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
}

}  // namespace

TEST(Hermite, DirectFormula) {
    const CubicBezier b = hermite_to_bezier({{0, 0}, {3, 0}, {3, 3}, {3, -3}});
    EXPECT_EQ(b, (CubicBezier{{0, 0}, {1, 1}, {2, 1}, {3, 0}}));
}

TEST(Hermite, ZeroTangentsCollapseInnerControls) {
    const CubicBezier b = hermite_to_bezier({{1, 2}, {4, 5}, {0, 0}, {0, 0}});
    EXPECT_EQ(b.b1, b.b0);
    EXPECT_EQ(b.b2, b.b3);
}

TEST(Hermite, MatchesBasisEvaluation) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const HermiteSegment h{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        const CubicBezier b = hermite_to_bezier(h);
        for (int k = 0; k < 100; ++k) {
            const double t = k / 99.0;
            expect_near(b.eval(t), hermite_basis(h, t), 1e-12);
            expect_near(h.eval(t), hermite_basis(h, t), 1e-12);
        }
        const HermiteSegment back = bezier_to_hermite(b);
        expect_near(back.m0, h.m0, 1e-12);
        expect_near(back.m1, h.m1, 1e-12);
    }
}

TEST(CatmullRom, TwoPointsGiveAStraightSegment) {
    const auto chain = catmullrom_to_beziers({{{0, 0}, {2, 1}}});
    ASSERT_EQ(chain.size(), 1u);
    const CubicBezier& b = chain[0];
    EXPECT_NEAR(cross(b.b1 - b.b0, b.b3 - b.b0), 0.0, 1e-12);
    EXPECT_NEAR(cross(b.b2 - b.b0, b.b3 - b.b0), 0.0, 1e-12);
}

TEST(CatmullRom, CollinearEvenlySpacedStaysCollinear) {
    for (auto param : {Parameterization::Uniform, Parameterization::Centripetal}) {
        const auto chain = catmullrom_to_beziers({{{0, 0}, {1, 0.5}, {2, 1}, {3, 1.5}}, param});
        for (const CubicBezier& b : chain) {
            for (Point p : {b.b0, b.b1, b.b2, b.b3}) EXPECT_NEAR(cross(p, Vec2{2, 1}), 0.0, 1e-12);
        }
    }
}

TEST(CatmullRom, JoinTangentsAreContinuous) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (auto param : {Parameterization::Uniform, Parameterization::Centripetal}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Point> pts;
            for (int k = 0; k < 5; ++k) pts.push_back({u(rng), u(rng)});
            const auto chain = catmullrom_to_beziers({pts, param});
            ASSERT_EQ(chain.size(), 4u);
            for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
                expect_near(chain[k].b3, chain[k + 1].b0, 0.0);
                // Uniform chains are C1 in t; centripetal ones share the tangent direction.
                const Vec2 tl = chain[k].derivative(1.0);
                const Vec2 tr = chain[k + 1].derivative(0.0);
                if (param == Parameterization::Uniform) {
                    EXPECT_LE(norm(tl - tr), 1e-9);
                } else {
                    EXPECT_LE(std::abs(cross(tl / norm(tl), tr / norm(tr))), 1e-9);
                    EXPECT_GT(dot(tl, tr), 0.0);
                }
            }
            expect_near(chain.front().b0, pts.front(), 0.0);
            expect_near(chain.back().b3, pts.back(), 0.0);
        }
    }
}

TEST(CatmullRom, RejectsDegenerateInput) {
    EXPECT_THROW(catmullrom_to_beziers({{{0, 0}}}), GeometryError);
    EXPECT_THROW(catmullrom_to_beziers({{{0, 0}, {0, 0}, {1, 1}}}), GeometryError);
}

TEST(Bezier, MidpointSplit) {
    const CubicBezier b{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    const auto [l, r] = b.split(0.5);
    expect_near(l.b3, {0.5, 0.75}, 1e-15);
    expect_near(r.b0, {0.5, 0.75}, 1e-15);
}

TEST(Flatten, LevelZeroIsTheChord) {
    const CubicBezier b{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    const auto s = flatten(b, 0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0], (Segment{b.b0, b.b3}));
}

TEST(Flatten, DeviationWithinSubdivisionBound) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const CubicBezier b{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        for (int levels : {0, 2, 4, 5}) {
            const auto segs = flatten(b, levels);
            ASSERT_EQ(segs.size(), std::size_t{1} << levels);
            const double n = static_cast<double>(segs.size());
            for (std::size_t k = 0; k < segs.size(); ++k) {
                expect_near(segs[k].p0, b.eval(k / n), 1e-12);
                expect_near(segs[k].p1, b.eval((k + 1) / n), 1e-12);
            }
            const double bound = std::pow(0.25, levels) *
                                 std::max(norm(b.b0 - 2 * b.b1 + b.b2), norm(b.b1 - 2 * b.b2 + b.b3));
            const SiteShape poly{segs};
            double worst = 0.0;
            for (int k = 0; k <= 1000; ++k) worst = std::max(worst, distance_point_shape(b.eval(k / 1000.0), poly));
            EXPECT_LE(worst, bound + 1e-12) << "levels " << levels;
        }
    }
}

TEST(Flatten, RejectsBadLevels) {
    const CubicBezier b{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    EXPECT_THROW(flatten(b, -1), GeometryError);
    EXPECT_THROW(flatten(b, 17), GeometryError);
}

TEST(Flatten, ChainDropsDuplicateJoins) {
    const auto chain = catmullrom_to_beziers({{{0, 0}, {1, 1}, {2, 0}}});
    const SiteShape s = flatten_chain(chain, 3);
    EXPECT_EQ(s.segments.size(), 16u);
    EXPECT_EQ(s.source, ShapeSource::CurveChain);
    for (std::size_t k = 1; k < s.segments.size(); ++k) EXPECT_EQ(s.segments[k - 1].p1, s.segments[k].p0);
}
