#include "fixtures.hpp"
#include "oracles.hpp"
#include "scatter/trees.hpp"

#include <gtest/gtest.h>

using namespace scatter;
using fix::pt;

namespace {

std::vector<Wall> added(const Diagram& d)
{
    std::vector<Wall> out;
    for (const auto& w : d.walls()) {
        if (!w.initial) {
            out.push_back(w);
        }
    }
    return out;
}

} // namespace

TEST(Completion, TwoWallAddsOneWall)
{
    auto c = complete(fix::two_wall(8), 8);
    auto walls = added(c);
    ASSERT_EQ(walls.size(), 1u);
    const Wall& w = walls[0];
    EXPECT_EQ(w.support.kind, SupportR2::Kind::ray);
    EXPECT_EQ(w.support.base, pt(0, 0));
    EXPECT_EQ(w.support.direction, (LatticeVector{-1, -1}));
    // log(1 + t1 t2 z^(1,1)) along n = (1,-1): the only series with the right first term and no more walls.
    LieElement expect(c.ctx(), 8);
    Coefficient tt = fix::t(1) * fix::t(2), p = tt;
    for (long j = 1; 2 * j < 8; ++j) {
        expect += LieElement::term(c.ctx(), 8, LatticeVector{j, j}, {1, -1}, p * frac(j % 2 ? 1 : -1, j));
        p = p * tt;
    }
    EXPECT_EQ(w.theta.log(), expect);
    EXPECT_TRUE(is_consistent(c, 8).consistent);
}

TEST(Completion, SerialAndParallelAgree)
{
    auto d = fix::two_wall(6);
    auto a = complete(d, 6, Exec::serial);
    auto b = complete(d, 6, Exec::parallel);
    ASSERT_EQ(a.walls().size(), b.walls().size());
    for (std::size_t i = 0; i < a.walls().size(); ++i) {
        EXPECT_EQ(a.walls()[i].theta, b.walls()[i].theta);
        EXPECT_TRUE(a.walls()[i].support.same_set(b.walls()[i].support));
    }
}

TEST(Completion, CompletingTwiceAddsNothing)
{
    auto c = complete(fix::two_wall(6), 6);
    auto cc = complete(c, 6);
    EXPECT_EQ(cc.walls().size(), c.walls().size());
}

TEST(Completion, ParallelWallsNeedNothing)
{
    auto ctx = LieContext::classical(2);
    Diagram d(Mode::tropical, ctx, 5);
    d.add_wall(fix::line_wall(ctx, 5, {1, 0}, {0, 1}, 1));
    d.add_wall(fix::line_wall(ctx, 5, {1, 0}, {0, 1}, 2, pt(0, 3)));
    auto c = complete(d, 5);
    EXPECT_EQ(c.walls().size(), 2u);
}

TEST(Completion, A2AddsTheDilogarithmWall)
{
    const int k = 8;
    auto c = complete(initial_diagram(fix::a2(), k), k);
    auto walls = added(c);
    ASSERT_EQ(walls.size(), 1u);
    EXPECT_EQ(walls[0].m, (LatticeVector{1, 1}));
    EXPECT_EQ(walls[0].support.direction, (LatticeVector{1, -1})); // -p((1,1))
    EXPECT_EQ(walls[0].theta.log(), quantum_dilog(c.ctx(), k, {1, 1}, -1));
    // The series oracle picks out the same sign for the middle factor.
    EXPECT_TRUE(oracle::pentagon_holds(k, -1, -1));
    EXPECT_FALSE(oracle::pentagon_holds(k, -1, 1));
}

TEST(Completion, KroneckerIsConsistent)
{
    auto c = complete(initial_diagram(fix::kronecker(), 5), 5);
    EXPECT_TRUE(is_consistent(c, 5).consistent);
    EXPECT_EQ(added(c).size(), 3u);
}

TEST(Perturb, DeterministicAndGeneric)
{
    auto d = fix::two_wall(4);
    auto a = perturb(d, 2, 17, 4);
    auto b = perturb(d, 2, 17, 4);
    EXPECT_EQ(a.offsets, b.offsets);
    EXPECT_EQ(a.diagram.walls().size(), 6u); // (i, J) for nonempty J in {1,2}, two walls
    EXPECT_TRUE(check_generic(a.diagram, 4).generic);
    for (const auto& w : a.diagram.walls()) {
        ASSERT_TRUE(w.tag.has_value());
        EXPECT_FALSE(w.theta.is_identity());
    }
}

TEST(Perturb, CoincidentOffsetsAreNotGeneric)
{
    auto d = fix::two_wall(4);
    std::vector<Rational> same(6, Rational(0));
    EXPECT_FALSE(check_generic(perturb_with_offsets(d, 2, same), 4).generic);
}

TEST(Perturb, TreeSumMatchesCompletion)
{
    for (int k = 2; k <= 4; ++k) {
        auto p = perturb(fix::two_wall(k), 2, 3, k);
        auto c = complete(p.diagram, k);
        auto t = tree_sum_diagram(p.diagram, k);
        EXPECT_TRUE(equivalent(c, t, k).equivalent) << "order " << k;
    }
}
