#include "scatter/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scatter;

TEST(Lattice, Pairing)
{
    EXPECT_EQ(pairing({1, 0}, {0, 1}), 0);
    EXPECT_EQ(pairing({2, 3}, {1, 1}), 5);
    EXPECT_EQ(pairing({1, 0}, {-1, 0}), -1);
    EXPECT_THROW(pairing({1, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST(Lattice, Degree)
{
    auto cone = ConeData::standard(2);
    EXPECT_EQ(GradingFunctional({1, 1}).degree({1, 0}, cone), 1);
    EXPECT_EQ(GradingFunctional({1, 1}).degree({2, 3}, cone), 5);
    EXPECT_EQ(GradingFunctional({2, 1}).degree({1, 1}, cone), 3);
    EXPECT_THROW(GradingFunctional({1, 1}).degree({0, 0}, cone), std::invalid_argument);
    EXPECT_THROW(GradingFunctional({1, 1}).degree({-1, 2}, cone), std::invalid_argument);
}

TEST(Lattice, IntersectSupports)
{
    auto x_axis = SupportR2::line({0, 0}, {1, 0});
    auto y_axis = SupportR2::line({0, 0}, {0, 1});
    auto i = intersect_supports(x_axis, y_axis);
    ASSERT_EQ(i.kind, Intersection::Kind::point);
    EXPECT_EQ(i.point, (Point2{0, 0}));

    auto r1 = SupportR2::ray({0, 0}, {1, 1});
    auto r2 = SupportR2::ray({1, 0}, {1, 1});
    EXPECT_EQ(intersect_supports(r1, r2).kind, Intersection::Kind::empty);

    auto l = SupportR2::line({0, 1}, {1, 0});
    auto j = intersect_supports(l, r1);
    ASSERT_EQ(j.kind, Intersection::Kind::point);
    EXPECT_EQ(j.point, (Point2{1, 1}));

    auto r3 = SupportR2::ray({2, 2}, {-1, -1});
    EXPECT_EQ(intersect_supports(r1, r3).kind, Intersection::Kind::overlap);
    auto r4 = SupportR2::ray({0, 0}, {-1, -1});
    auto k = intersect_supports(r1, r4);
    ASSERT_EQ(k.kind, Intersection::Kind::point);
    EXPECT_EQ(k.point, (Point2{0, 0}));
}

TEST(Lattice, SkewFormAndPMap)
{
    SkewForm w({{0, -1}, {1, 0}});
    EXPECT_TRUE(w.nondegenerate());
    EXPECT_EQ(w({1, 0}, {0, 1}), -1);
    EXPECT_EQ(w.p_map({1, 1}), (LatticeVector{-1, 1}));
    EXPECT_THROW(SkewForm({{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST(LatticeProperty, BilinearPrimitiveSymmetric)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    auto vec = [&] { return LatticeVector{d(rng), d(rng)}; };
    for (int trial = 0; trial < 300; ++trial) {
        LatticeVector a = vec(), b = vec(), n = vec();
        EXPECT_EQ(pairing(a + b, n), pairing(a, n) + pairing(b, n));
        if (!a.is_zero()) {
            int k = 1 + trial % 7;
            EXPECT_EQ((a * k).primitive(), a.primitive());
            EXPECT_EQ(a.primitive().content(), 1);
        }
        LatticeVector u = vec(), v = vec();
        if (u.is_zero() || v.is_zero()) {
            continue;
        }
        Point2 p{frac(d(rng), 3), frac(d(rng), 5)};
        Point2 q{frac(d(rng), 7), frac(d(rng), 2)};
        SupportR2 s1 = trial % 2 ? SupportR2::ray(p, u.primitive()) : SupportR2::line(p, u.primitive());
        SupportR2 s2 = trial % 3 ? SupportR2::ray(q, v.primitive()) : SupportR2::line(q, v.primitive());
        auto x = intersect_supports(s1, s2);
        auto y = intersect_supports(s2, s1);
        ASSERT_EQ(x.kind, y.kind);
        if (x.kind == Intersection::Kind::point) {
            EXPECT_EQ(x.point, y.point);
            EXPECT_TRUE(s1.contains(x.point));
            EXPECT_TRUE(s2.contains(x.point));
        }
    }
}

TEST(LatticeProperty, DegreeAdditive)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(0, 9);
    GradingFunctional g({2, 3});
    auto cone = ConeData::standard(2);
    for (int trial = 0; trial < 200; ++trial) {
        LatticeVector a{d(rng), d(rng) + 1}, b{d(rng) + 1, d(rng)};
        EXPECT_EQ(g.degree(a + b, cone), g.degree(a, cone) + g.degree(b, cone));
        EXPECT_GE(g.degree(a, cone), 1);
    }
}

TEST(Lattice, OverflowChecked)
{
    LatticeVector big{INT64_MAX, 0};
    LatticeVector one{1, 0};
    EXPECT_THROW(big + one, std::overflow_error);
}
