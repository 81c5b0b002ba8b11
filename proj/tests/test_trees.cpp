#include "fixtures.hpp"

#include "scatter/trees.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using namespace scatter;
using fix::pt;

namespace {

// Unordered canonical string of a family tree, rebuilt from its children.
std::string unordered(const TreeFamily& f, int i)
{
    const TreeInfo& t = f.trees[static_cast<std::size_t>(i)];
    if (t.is_leaf()) {
        return "w" + std::to_string(t.wall) + "k" + std::to_string(t.k);
    }
    std::string a = unordered(f, t.left), b = unordered(f, t.right);
    if (b < a) {
        std::swap(a, b);
    }
    return "(" + a + "," + b + ")";
}

// All planar (ordered) binary trees over a multiset of leaf labels, as strings.
std::set<std::string> planar(std::vector<std::string> leaves)
{
    std::set<std::string> out;
    if (leaves.size() == 1) {
        out.insert(leaves[0]);
        return out;
    }
    std::sort(leaves.begin(), leaves.end());
    const std::size_t n = leaves.size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::string> l, r;
        for (std::size_t i = 0; i < n; ++i) {
            ((mask >> i) & 1 ? l : r).push_back(leaves[i]);
        }
        for (const auto& a : planar(l)) {
            for (const auto& b : planar(r)) {
                out.insert("(" + a + "," + b + ")");
            }
        }
    }
    return out;
}

// Forget the ordering of a planar string.
std::string unorder(const std::string& s)
{
    if (s[0] != '(') {
        return s;
    }
    int depth = 0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        } else if (s[i] == ',' && depth == 0) {
            std::string a = unorder(s.substr(1, i - 1)), b = unorder(s.substr(i + 1, s.size() - i - 2));
            if (b < a) {
                std::swap(a, b);
            }
            return "(" + a + "," + b + ")";
        }
    }
    return s;
}

void leaf_labels(const TreeFamily& f, int i, std::vector<std::string>& out)
{
    const TreeInfo& t = f.trees[static_cast<std::size_t>(i)];
    if (t.is_leaf()) {
        out.push_back("w" + std::to_string(t.wall) + "k" + std::to_string(t.k));
        return;
    }
    leaf_labels(f, t.left, out);
    leaf_labels(f, t.right, out);
}

} // namespace

TEST(Trees, SingleWallHasOnlyLeaves)
{
    auto ctx = LieContext::classical(2);
    Diagram d(Mode::tropical, ctx, 3);
    d.add_wall(fix::line_wall(ctx, 3, {1, 0}, {0, 1}, 1));
    auto f = enumerate_trees(d, TreeKind::labeled, 3);
    for (const auto& t : f.trees) {
        if (!t.is_leaf()) {
            EXPECT_TRUE(t.g.is_zero());
        }
    }
    int leaves = 0;
    for (const auto& t : f.trees) {
        leaves += t.is_leaf();
    }
    EXPECT_EQ(leaves, 2); // k = 1, 2
}

TEST(Trees, TwoWallJoin)
{
    auto d = fix::two_wall(3);
    auto f = enumerate_trees(d, TreeKind::labeled, 3);
    auto it = std::find_if(f.trees.begin(), f.trees.end(), [](const TreeInfo& t) {
        return !t.is_leaf() && t.m == LatticeVector{1, 1};
    });
    ASSERT_NE(it, f.trees.end());
    EXPECT_TRUE(parallel(it->n, LatticeVector{1, -1}));
    EXPECT_EQ(it->support.kind, TreeSupport::Kind::ray);
    EXPECT_EQ(it->support.base, pt(0, 0));
    EXPECT_EQ(it->support.direction, (LatticeVector{-1, -1}));
    // g = [g_11, g_12] up to the ribbon sign
    auto g11 = LieElement::term(d.ctx(), 3, {1, 0}, {0, 1}, fix::t(1));
    auto g12 = LieElement::term(d.ctx(), 3, {0, 1}, {1, 0}, fix::t(2));
    auto b = bracket(g11, g12);
    EXPECT_TRUE(it->g == b || it->g == -b);
}

TEST(Trees, WeightedTreesUseEachWallOnce)
{
    auto p = perturb(fix::two_wall(4), 2, 1, 4);
    auto f = enumerate_trees(p.diagram, TreeKind::weighted, 4);
    for (const auto& t : f.trees) {
        if (t.is_leaf()) {
            continue;
        }
        const auto& l = f.trees[static_cast<std::size_t>(t.left)];
        const auto& r = f.trees[static_cast<std::size_t>(t.right)];
        EXPECT_EQ(l.mask & r.mask, 0u);
        EXPECT_EQ(t.mask, l.mask | r.mask);
    }
}

TEST(TreesProperty, GradingAndOrthogonality)
{
    auto p = perturb(fix::two_wall(5), 2, 9, 5);
    for (TreeKind kind : {TreeKind::labeled, TreeKind::weighted}) {
        auto f = enumerate_trees(p.diagram, kind, 5);
        for (const auto& t : f.trees) {
            if (!t.is_leaf()) {
                EXPECT_EQ(t.m, f.trees[static_cast<std::size_t>(t.left)].m + f.trees[static_cast<std::size_t>(t.right)].m);
            }
            if (!t.g.is_zero()) {
                for (const auto& [m, b] : t.g.blocks()) {
                    EXPECT_EQ(m, t.m);
                }
            }
            if (t.support.kind == TreeSupport::Kind::ray || t.support.kind == TreeSupport::Kind::line) {
                if (!t.n.is_zero()) {
                    EXPECT_EQ(pairing(t.support.direction, t.n), 0);
                }
            }
        }
    }
}

// Each unordered tree over k leaves has 2^(k-1)/|Aut| distinct planar structures.
TEST(TreesProperty, RibbonCountMatchesAutomorphisms)
{
    auto d = fix::two_wall(5);
    auto f = enumerate_trees(d, TreeKind::labeled, 5);
    int checked = 0;
    for (std::size_t i = 0; i < f.trees.size(); ++i) {
        const TreeInfo& t = f.trees[i];
        if (t.leaves > 4) {
            continue;
        }
        std::vector<std::string> leaves;
        leaf_labels(f, static_cast<int>(i), leaves);
        std::string target = unordered(f, static_cast<int>(i));
        long count = 0;
        for (const auto& s : planar(leaves)) {
            count += unorder(s) == target;
        }
        EXPECT_EQ(count * t.aut, 1L << (t.leaves - 1)) << target;
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(TreesProperty, EnumerationIsDuplicateFree)
{
    auto f = enumerate_trees(fix::two_wall(6), TreeKind::labeled, 6);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < f.trees.size(); ++i) {
        EXPECT_TRUE(seen.insert(unordered(f, static_cast<int>(i))).second);
    }
}

TEST(Trees, ConeFlowDirections)
{
    SkewForm a2 = euler_form(fix::a2());
    EXPECT_EQ(canonical_direction({1, 0}, a2), (LatticeVector{-1, 0}));
    EXPECT_EQ(canonical_direction({2, 0}, a2), (LatticeVector{-2, 0}));
    EXPECT_EQ(canonical_direction({1, 1}, a2), (LatticeVector{1, -1}));
    EXPECT_EQ(canonical_direction({1, 1}, euler_form(fix::kronecker())), (LatticeVector{2, -2}));
    EXPECT_THROW(canonical_direction({1, 1}, SkewForm::zero(2)), std::invalid_argument);
}

TEST(Trees, MarkedCoreSingleAttachment)
{
    auto d = fix::two_wall(4);
    auto f = enumerate_trees(d, TreeKind::labeled, 4);
    const TreeInfo* leaf = nullptr;
    for (const auto& t : f.trees) {
        if (t.is_leaf() && t.wall == 0 && t.k == 1) {
            leaf = &t;
        }
    }
    ASSERT_NE(leaf, nullptr);
    // mark (0,2): <(0,2), n_1> = 2, g_11 = t1 z^(1,0) d_(0,1)
    auto core = marked_core({0, 2}, {leaf}, d.ctx(), 4);
    EXPECT_EQ(core.a, AlgebraElement::monomial(d.ctx(), 4, {1, 2}, fix::t(1) * Rational(2)));
    EXPECT_EQ(core.eps, -1);
    EXPECT_EQ(marked_core({3, 0}, {leaf}, d.ctx(), 4).eps, 0);
    auto trivial = marked_core({1, 1}, {}, d.ctx(), 4);
    EXPECT_EQ(trivial.eps, 1);
    EXPECT_EQ(trivial.a, AlgebraElement::monomial(d.ctx(), 4, {1, 1}));
}
