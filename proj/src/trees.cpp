#include "scatter/trees.hpp"

#include <algorithm>
#include <map>

namespace scatter {

std::string to_string(TreeKind k)
{
    return k == TreeKind::labeled ? "labeled" : "weighted";
}

TreeKind parse_tree_kind(const std::string& s)
{
    if (s == "labeled") {
        return TreeKind::labeled;
    }
    if (s == "weighted") {
        return TreeKind::weighted;
    }
    throw std::invalid_argument("unknown tree kind '" + s + "'");
}

std::string to_string(TreeSupport::Kind k)
{
    switch (k) {
    case TreeSupport::Kind::empty:
        return "empty";
    case TreeSupport::Kind::point:
        return "point";
    case TreeSupport::Kind::ray:
        return "ray";
    case TreeSupport::Kind::line:
        return "line";
    case TreeSupport::Kind::region:
        return "region";
    }
    return "empty";
}

SupportR2 TreeSupport::as_support() const
{
    if (kind == Kind::ray) {
        return SupportR2::ray(base, direction);
    }
    if (kind == Kind::line) {
        return SupportR2::line(base, direction);
    }
    throw std::logic_error("tree support of kind " + to_string(kind) + " is not a line or ray");
}

bool TreeSupport::contains_in_relative_interior(const Point2& x) const
{
    switch (kind) {
    case Kind::ray:
        return as_support().contains_in_interior(x);
    case Kind::line:
        return as_support().contains(x);
    case Kind::point:
        return false;
    default:
        return false;
    }
}

LatticeVector canonical_direction(const LatticeVector& m, const SkewForm& omega)
{
    int nonzero = 0, idx = -1;
    for (int i = 0; i < m.rank(); ++i) {
        if (m[i] != 0) {
            ++nonzero;
            idx = i;
        }
    }
    if (nonzero == 1) {
        LatticeVector v(m.rank());
        v[idx] = -m[idx];
        return v;
    }
    if (!omega.nondegenerate()) {
        throw std::invalid_argument("canonical direction needs a non-degenerate skew form");
    }
    return -omega.p_map(m);
}

namespace {

LatticeVector flow_direction(const LatticeVector& m, Mode mode, const ContextPtr& ctx)
{
    if (mode == Mode::tropical) {
        return -m.primitive();
    }
    return canonical_direction(m, ctx->omega).primitive();
}

TreeSupport join_support(const TreeSupport& a, const TreeSupport& b, const LatticeVector& dir)
{
    TreeSupport out;
    if (a.kind == TreeSupport::Kind::empty || b.kind == TreeSupport::Kind::empty) {
        return out;
    }
    if (a.kind == TreeSupport::Kind::region || b.kind == TreeSupport::Kind::region ||
        a.kind == TreeSupport::Kind::point || b.kind == TreeSupport::Kind::point) {
        out.kind = TreeSupport::Kind::region;
        return out;
    }
    SupportR2 sa = a.as_support(), sb = b.as_support();
    Intersection x = intersect_supports(sa, sb);
    if (x.kind == Intersection::Kind::empty) {
        return out;
    }
    if (x.kind == Intersection::Kind::point) {
        out.kind = TreeSupport::Kind::ray;
        out.base = x.point;
        out.direction = dir;
        return out;
    }
    // Collinear overlap: the flow either stays on the carrier or sweeps a region.
    if (parallel(sa.direction, dir)) {
        out.kind = TreeSupport::Kind::line;
        out.base = sa.base;
        out.direction = sa.direction;
    } else {
        out.kind = TreeSupport::Kind::region;
    }
    return out;
}

} // namespace

TreeFamily enumerate_trees(const Diagram& in, TreeKind kind, int order)
{
    if (order > in.order()) {
        throw std::invalid_argument("tree order exceeds the diagram order");
    }
    const ContextPtr& ctx = in.ctx();
    const Mode mode = in.mode();
    if (kind == TreeKind::weighted && in.walls().size() > 64) {
        throw std::invalid_argument("weighted trees support at most 64 walls");
    }
    TreeFamily fam;
    fam.kind = kind;
    fam.mode = mode;
    std::vector<std::vector<int>> by_degree(static_cast<std::size_t>(order));
    for (std::size_t w = 0; w < in.walls().size(); ++w) {
        const Wall& wall = in.walls()[w];
        for (const auto& [m, block] : wall.theta.log().blocks()) {
            std::int64_t deg = ctx->degree(m);
            if (deg >= order) {
                continue;
            }
            TreeInfo t;
            t.wall = static_cast<int>(w);
            t.k = static_cast<int>(m.content() / wall.m.content());
            t.m = m;
            t.degree = deg;
            t.mask = std::uint64_t{1} << (w % 64);
            t.canon = "w" + std::to_string(w) + "k" + std::to_string(t.k);
            t.n = wall.n;
            t.g = wall.theta.log().with_order(order).block_at(m);
            if (kind == TreeKind::weighted) {
                // A weighted leaf carries the full log of its wall.
                t.g = wall.theta.log().with_order(order);
            }
            t.support.kind = wall.support.kind == SupportR2::Kind::line ? TreeSupport::Kind::line
                                                                          : TreeSupport::Kind::ray;
            t.support.base = wall.support.base;
            t.support.direction = wall.support.direction;
            by_degree[static_cast<std::size_t>(deg)].push_back(static_cast<int>(fam.trees.size()));
            fam.trees.push_back(std::move(t));
        }
    }
    if (kind == TreeKind::weighted) {
        for (const auto& w : in.walls()) {
            if (w.theta.log().blocks().size() > 1) {
                throw std::invalid_argument("weighted trees need walls with homogeneous logs");
            }
        }
    }
    for (int d = 2; d < order; ++d) {
        std::vector<int> made;
        for (int d1 = 1; 2 * d1 <= d; ++d1) {
            const int d2 = d - d1;
            const auto& A = by_degree[static_cast<std::size_t>(d1)];
            const auto& B = by_degree[static_cast<std::size_t>(d2)];
            for (std::size_t ia = 0; ia < A.size(); ++ia) {
                for (std::size_t ib = (d1 == d2 ? ia : 0); ib < B.size(); ++ib) {
                    int a = A[ia], b = B[ib];
                    const TreeInfo& ta = fam.trees[static_cast<std::size_t>(a)];
                    const TreeInfo& tb = fam.trees[static_cast<std::size_t>(b)];
                    if (kind == TreeKind::weighted && (ta.mask & tb.mask)) {
                        continue;
                    }
                    if (tb.canon < ta.canon) {
                        std::swap(a, b);
                    }
                    const TreeInfo& l = fam.trees[static_cast<std::size_t>(a)];
                    const TreeInfo& r = fam.trees[static_cast<std::size_t>(b)];
                    TreeInfo t;
                    t.left = a;
                    t.right = b;
                    t.m = l.m + r.m;
                    t.degree = d;
                    t.leaves = l.leaves + r.leaves;
                    t.mask = l.mask | r.mask;
                    t.aut = l.aut * r.aut * (l.canon == r.canon ? 2 : 1);
                    t.canon = "(" + l.canon + "," + r.canon + ")";
                    if (mode == Mode::tropical) {
                        t.n = r.n * pairing(r.m, l.n) - l.n * pairing(l.m, r.n);
                    }
                    t.g = bracket(l.g, r.g);
                    t.support = join_support(l.support, r.support, flow_direction(t.m, mode, ctx));
                    if (mode == Mode::tropical && t.support.kind == TreeSupport::Kind::ray && !t.n.is_zero() &&
                        pairing(t.support.direction, t.n) != 0) {
                        throw std::logic_error("tree support is not orthogonal to n");
                    }
                    made.push_back(static_cast<int>(fam.trees.size()));
                    fam.trees.push_back(std::move(t));
                }
            }
        }
        by_degree[static_cast<std::size_t>(d)].insert(by_degree[static_cast<std::size_t>(d)].end(), made.begin(),
                                                      made.end());
    }
    return fam;
}

GenericReport check_generic(const Diagram& d, int order)
{
    bool tagged = !d.walls().empty() && std::all_of(d.walls().begin(), d.walls().end(),
                                                     [](const Wall& w) { return w.tag.has_value(); });
    TreeFamily fam = enumerate_trees(d, tagged ? TreeKind::weighted : TreeKind::labeled, order);
    GenericReport rep;
    for (const auto& t : fam.trees) {
        if (t.is_leaf() || t.g.is_zero()) {
            continue;
        }
        const TreeInfo& l = fam.trees[static_cast<std::size_t>(t.left)];
        const TreeInfo& r = fam.trees[static_cast<std::size_t>(t.right)];
        if (l.support.kind == TreeSupport::Kind::empty || r.support.kind == TreeSupport::Kind::empty) {
            continue;
        }
        if (l.support.kind == TreeSupport::Kind::region || r.support.kind == TreeSupport::Kind::region) {
            rep.generic = false;
            rep.witness = t.canon + ": child support is not one-dimensional";
            return rep;
        }
        Intersection x = intersect_supports(l.support.as_support(), r.support.as_support());
        if (x.kind == Intersection::Kind::empty) {
            continue;
        }
        if (x.kind == Intersection::Kind::overlap) {
            rep.generic = false;
            rep.witness = t.canon + ": child supports overlap";
            return rep;
        }
        if (!l.support.contains_in_relative_interior(x.point) || !r.support.contains_in_relative_interior(x.point)) {
            rep.generic = false;
            rep.witness = t.canon + ": child supports meet at the boundary point " + x.point.str();
            return rep;
        }
    }
    return rep;
}

Diagram tree_sum_diagram(const Diagram& perturbed, int order)
{
    GenericReport gen = check_generic(perturbed, order);
    if (!gen.generic) {
        throw GenericityError("tree sum needs a generic diagram: " + gen.witness);
    }
    TreeFamily fam = enumerate_trees(perturbed, TreeKind::weighted, order);
    Diagram out = perturbed.truncated(order);
    for (const auto& t : fam.trees) {
        if (t.is_leaf() || t.g.is_zero() || t.support.kind != TreeSupport::Kind::ray) {
            continue;
        }
        Wall w;
        w.m = t.m.primitive();
        w.n = t.n.primitive();
        w.support = t.support.as_support();
        w.theta = GroupElement(t.g * Rational(1, t.aut));
        out.add_wall(std::move(w));
    }
    return out;
}

MarkedCore marked_core(const LatticeVector& mark, const std::vector<const TreeInfo*>& attached,
                       const ContextPtr& ctx, int order)
{
    MarkedCore core;
    core.a = AlgebraElement::monomial(ctx, order, mark);
    LatticeVector m = mark;
    for (const TreeInfo* t : attached) {
        core.eps *= sign(pairing(-m, t->n));
        core.a = act(t->g, core.a);
        m = m + t->m;
    }
    return core;
}

} // namespace scatter
