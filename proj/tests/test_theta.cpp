#include "fixtures.hpp"
#include "generators.hpp"

#include "scatter/theta.hpp"
#include "scatter/trees.hpp"

#include <gtest/gtest.h>

using namespace scatter;
using fix::pt;

namespace {

const Diagram& completed_two_wall()
{
    static const Diagram c = complete(fix::two_wall(6), 6);
    return c;
}

Point2 random_point(gen::Rng& r)
{
    return pt(r.range(-90, 90), r.range(-90, 90), r.range(7, 13));
}

} // namespace

TEST(Theta, ZeroIndexIsOne)
{
    const auto& c = completed_two_wall();
    auto th = theta(c, {0, 0}, pt(-3, -5), 6);
    EXPECT_EQ(th, AlgebraElement::monomial(c.ctx(), 6, {0, 0}));
}

TEST(Theta, BaseChamberIsPureMonomial)
{
    const auto& c = completed_two_wall();
    Point2 q0 = base_chamber_point(c, {2, 1}, 6);
    EXPECT_EQ(theta(c, {2, 1}, q0, 6), AlgebraElement::monomial(c.ctx(), 6, {2, 1}));
}

TEST(Theta, KnownValues)
{
    const auto& c = completed_two_wall();
    auto th = theta(c, {1, 0}, pt(-3, 5), 6);
    AlgebraElement expect = AlgebraElement::monomial(c.ctx(), 6, {1, 0});
    expect.add_term({1, 1}, fix::t(2));
    EXPECT_EQ(th, expect);
}

TEST(ThetaProperty, LeadingTermAndTransport)
{
    const auto& c = completed_two_wall();
    gen::Rng r(23);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        LatticeVector m{r.range(0, 2), r.range(0, 2)};
        if (m.is_zero()) {
            continue;
        }
        Point2 q = random_point(r);
        try {
            auto th = theta(c, m, q, 6);
            EXPECT_EQ(th.coeff(m), Coefficient(1));
            for (const auto& [key, coeff] : th.terms()) {
                if (key != m) {
                    EXPECT_GT(c.ctx()->degree(key), c.ctx()->degree(m));
                }
            }
            EXPECT_EQ(th, theta_by_transport(c, m, q, 6));
            ++checked;
        } catch (const GenericityError&) {
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(ThetaProperty, SerialAndParallelAgree)
{
    const auto& c = completed_two_wall();
    auto a = theta(c, {1, 1}, pt(-37, -53, 7), 6, Exec::serial);
    auto b = theta(c, {1, 1}, pt(-37, -53, 7), 6, Exec::parallel);
    EXPECT_EQ(a, b);
}

TEST(ThetaProperty, TruncationCompatible)
{
    const auto& c = completed_two_wall();
    Point2 q = pt(-41, -29, 5);
    auto full = theta(c, {1, 1}, q, 6);
    for (int j = 1; j <= 6; ++j) {
        EXPECT_EQ(full.truncated(j), theta(c.truncated(j), {1, 1}, q, j)) << "order " << j;
    }
}

TEST(Theta, WallCrossingOnCompletedDiagram)
{
    const auto& c = completed_two_wall();
    PiecewisePath around{{pt(3, 5), pt(-3, 5), pt(-3, -7), pt(2, -7)}};
    for (LatticeVector m : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 2}}) {
        EXPECT_TRUE(check_wall_crossing(c, m, around, 6).holds);
    }
}

TEST(Theta, WallCrossingFailsWithoutCompletion)
{
    auto raw = fix::two_wall(6);
    PiecewisePath ccw{{pt(3, 5), pt(-3, 5), pt(-3, -7)}};
    PiecewisePath cw{{pt(3, 5), pt(3, -7), pt(-3, -7)}};
    auto a = check_wall_crossing(raw, {1, 0}, ccw, 6);
    auto b = check_wall_crossing(raw, {1, 0}, cw, 6);
    // Both paths cannot agree with the same broken-line value.
    EXPECT_FALSE(a.holds && b.holds);
    const auto& bad = a.holds ? b : a;
    std::int64_t low = 99;
    for (const auto& [key, coeff] : bad.discrepancy.terms()) {
        low = std::min(low, raw.ctx()->degree(key) - 1);
    }
    EXPECT_EQ(low, 2);
}

TEST(Theta, OrbitSumsReproduceBrokenLines)
{
    const int k = 4;
    auto p = perturb(fix::two_wall(k), 2, 1, k);
    auto c = complete(p.diagram, k);
    auto family = enumerate_trees(p.diagram, TreeKind::weighted, k);
    int checked = 0;
    for (LatticeVector m : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}}) {
        for (const auto& line : enumerate_broken_lines(c, m, pt(-37, -53, 3), k)) {
            if (line.bends.empty() || line.bends.size() > 2) {
                continue;
            }
            EXPECT_TRUE(orbit_sum_check(family, c.ctx(), line, k).holds);
            ++checked;
        }
    }
    EXPECT_GT(checked, 3);
}

TEST(Theta, QuantumConeBrokenLinesMatchTransport)
{
    auto c = complete(initial_diagram(fix::a2(), 5), 5);
    for (LatticeVector n : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}, LatticeVector{2, 1}}) {
        for (Point2 q : {pt(-3, -2), pt(2, -7), pt(-1, 2)}) {
            auto key = initial_key(c, n);
            EXPECT_EQ(theta(c, key, q, 5), theta_by_transport(c, key, q, 5));
        }
    }
}

TEST(Theta, RejectsWrongBackend)
{
    auto ctx = LieContext::quantum(SkewForm({{0, -1}, {1, 0}}));
    Diagram d(Mode::tropical, ctx, 3);
    EXPECT_THROW(initial_key(d, {1, 0}), std::invalid_argument);
}
