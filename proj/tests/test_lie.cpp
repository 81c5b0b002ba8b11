#include "scatter/group.hpp"

#include <gtest/gtest.h>

using namespace scatter;

namespace {

Coefficient t(int i, int e = 1)
{
    return Coefficient::monomial(NilpotentMonomial::t(i, e));
}

LaurentV v(int e, long c = 1)
{
    return LaurentV::monomial(e, Rational(c));
}

} // namespace

TEST(Lie, ClassicalBracket)
{
    auto ctx = LieContext::classical(2);
    auto x = LieElement::term(ctx, 8, {1, 0}, {0, 1}, 1);
    auto y = LieElement::term(ctx, 8, {0, 1}, {-1, 0}, 1);
    EXPECT_EQ(bracket(x, y), LieElement::term(ctx, 8, {1, 1}, {-1, 1}, 1));
    auto z = LieElement::term(ctx, 8, {2, 0}, {0, 1}, 1);
    EXPECT_TRUE(bracket(x, z).is_zero());
    EXPECT_THROW(LieElement::term(ctx, 8, {1, 0}, {1, 0}, 1), std::invalid_argument);
}

TEST(Lie, QuantumBracket)
{
    auto ctx = LieContext::quantum(SkewForm({{0, -1}, {1, 0}}));
    auto x = LieElement::qterm(ctx, 8, {1, 0}, 1);
    auto y = LieElement::qterm(ctx, 8, {0, 1}, 1);
    EXPECT_EQ(bracket(x, y), LieElement::qterm(ctx, 8, {1, 1}, Coefficient(v(-1) - v(1))));
}

TEST(Lie, BracketTruncates)
{
    auto ctx = LieContext::classical(2);
    auto x = LieElement::term(ctx, 2, {1, 0}, {0, 1}, 1);
    auto y = LieElement::term(ctx, 2, {0, 1}, {-1, 0}, 1);
    EXPECT_TRUE(bracket(x, y).is_zero());
}

TEST(Lie, Act)
{
    auto ctx = LieContext::classical(2);
    auto g = LieElement::term(ctx, 8, {1, 0}, {0, 1}, 1);
    auto a = AlgebraElement::monomial(ctx, 8, {0, 2});
    EXPECT_EQ(act(g, a), AlgebraElement::monomial(ctx, 8, {1, 2}, 2));
    EXPECT_TRUE(act(g, AlgebraElement::monomial(ctx, 8, {3, 0})).is_zero());

    auto q = LieContext::quantum(SkewForm({{0, 3}, {-3, 0}}));
    auto gq = LieElement::qterm(q, 8, {1, 0}, 1);
    EXPECT_TRUE(act(gq, AlgebraElement::monomial(q, 8, {0, 0, 0, 5})).is_zero());
    EXPECT_FALSE(act(gq, AlgebraElement::monomial(q, 8, {0, 0, 1, 0})).is_zero());
}

TEST(Lie, TropicalMembership)
{
    auto ctx = LieContext::classical(2);
    auto g = LieElement::term(ctx, 8, {1, 0}, {0, 1}, 1) + LieElement::term(ctx, 8, {1, 0}, {0, 2}, t(1));
    auto mem = tropical_membership(g);
    ASSERT_TRUE(mem.at({1, 0}).has_value());
    EXPECT_EQ(*mem.at({1, 0}), (LatticeVector{0, 1}));

    auto q = LieContext::quantum(SkewForm({{0, 1}, {-1, 0}}));
    auto gq = LieElement::qterm(q, 8, {1, 1}, 1);
    EXPECT_EQ(*tropical_membership(gq).at({1, 1}), (LatticeVector{1, -1}));

    auto r3 = LieContext::classical(3);
    auto mixed = LieElement::term(r3, 8, {1, 0, 0}, {0, 1, 0}, 1) +
                 LieElement::term(r3, 8, {1, 0, 0}, {0, 0, 1}, t(1));
    EXPECT_FALSE(tropical_membership(mixed).at({1, 0, 0}).has_value());
}

TEST(Lie, SplitBlock)
{
    Block b{Coefficient(0), t(1) * Rational(-4)};
    auto s = split_block(b);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->first, (LatticeVector{0, 1}));
    EXPECT_EQ(s->second, t(1) * Rational(-4));
    Block c{t(1) * Rational(3), t(1) * Rational(-6)};
    s = split_block(c);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->first, (LatticeVector{1, -2}));
    EXPECT_EQ(s->second, t(1) * Rational(3));
}

TEST(Group, BchCentral)
{
    auto ctx = LieContext::classical(2);
    auto x = LieElement::term(ctx, 3, {1, 0}, {0, 1}, t(1));
    auto y = LieElement::term(ctx, 3, {0, 1}, {1, 0}, t(2));
    // At order 3 only the first commutator survives.
    EXPECT_EQ(bch(x, y), x + y + bracket(x, y) * Rational(1, 2));
    EXPECT_EQ(bch(x, LieElement(ctx, 3)), x);
}

TEST(Group, BchTwoTerm)
{
    auto ctx = LieContext::classical(2);
    auto x = LieElement::term(ctx, 8, {1, 0}, {0, 1}, t(1));
    auto y = LieElement::term(ctx, 8, {0, 1}, {1, 0}, t(2));
    auto z = bch(x, y);
    auto expect = LieElement::term(ctx, 8, {1, 1}, {1, -1}, t(1) * t(2) * Rational(1, 2));
    EXPECT_EQ(z.homogeneous_degree(1), x + y);
    EXPECT_EQ(z.homogeneous_degree(2), expect);
    // Action oracle at every order.
    GroupElement a(x), b(y), ab(z);
    for (const auto& p : default_probes(ctx, 8)) {
        EXPECT_EQ(apply(ab, p), apply(a, apply(b, p)));
    }
}

TEST(Group, ApplyWallAutomorphism)
{
    // log = log(1 + t z^{(1,0)}) d_{(0,1)}; z^{(0,1)} -> z^{(0,1)} (1 + t z^{(1,0)})
    auto ctx = LieContext::classical(2);
    const int k = 8;
    LieElement log(ctx, k);
    Coefficient tp = 1;
    for (int j = 1; j < k; ++j) {
        tp = tp * t(1);
        Rational c(j % 2 ? 1 : -1, j);
        log += LieElement::term(ctx, k, {j, 0}, {0, 1}, tp * c);
    }
    auto z01 = AlgebraElement::monomial(ctx, k, {0, 1});
    auto expect = z01 + AlgebraElement::monomial(ctx, k, {1, 1}, t(1));
    EXPECT_EQ(apply(GroupElement(log), z01), expect);
    // z^{(0,3)} -> z^{(0,3)} (1 + t z)^3
    auto z03 = AlgebraElement::monomial(ctx, k, {0, 3});
    auto e3 = z03 + AlgebraElement::monomial(ctx, k, {1, 3}, t(1) * Rational(3)) +
              AlgebraElement::monomial(ctx, k, {2, 3}, t(1, 2) * Rational(3)) +
              AlgebraElement::monomial(ctx, k, {3, 3}, t(1, 3));
    EXPECT_EQ(apply(GroupElement(log), z03), e3);
}

TEST(Group, AutomorphismEqual)
{
    auto ctx = LieContext::classical(2);
    GroupElement a(LieElement::term(ctx, 4, {1, 0}, {0, 1}, t(1)));
    GroupElement b(LieElement::term(ctx, 4, {0, 1}, {1, 0}, t(2)));
    EXPECT_TRUE(automorphism_equal(a, a));
    EXPECT_TRUE(automorphism_equal(a, bch_product(a, GroupElement(ctx, 4))));
    EXPECT_FALSE(automorphism_equal(bch_product(a, b), bch_product(b, a)));
    EXPECT_TRUE(bch_product(a, a.inverse()).is_identity());
}
