#include "scatter/theta.hpp"

#include <algorithm>
#include <functional>

namespace scatter {

LatticeVector initial_key(const Diagram& d, const LatticeVector& v)
{
    const ContextPtr& ctx = d.ctx();
    if (v.rank() != ctx->rank) {
        throw std::invalid_argument("theta index " + v.str() + " has the wrong rank");
    }
    if (d.mode() == Mode::tropical) {
        if (ctx->backend != Backend::classical) {
            throw std::invalid_argument("broken lines in tropical mode need the classical backend");
        }
        return v;
    }
    if (ctx->backend != Backend::quantum) {
        throw std::invalid_argument("broken lines in cone mode need the quantum backend");
    }
    return LatticeVector(ctx->rank).concat(v);
}

LatticeVector velocity(const Diagram& d, const LatticeVector& key)
{
    const ContextPtr& ctx = d.ctx();
    if (d.mode() == Mode::tropical) {
        return -key;
    }
    LatticeVector m = key.slice(0, ctx->rank), n = key.slice(ctx->rank, ctx->rank);
    return -(ctx->omega.p_map(m) + n);
}

AlgebraElement BrokenLine::monomial(const ContextPtr& ctx, int order) const
{
    AlgebraElement a(ctx, order, ctx->degree(ctx->key_m(initial_key)));
    a.add_term(final_key, coeff);
    return a;
}

namespace {

bool dominates(const ContextPtr& ctx, const LatticeVector& key, const LatticeVector& key0)
{
    LatticeVector diff = key - key0;
    for (int i = 0; i < ctx->rank; ++i) {
        if (diff[i] < 0) {
            return false;
        }
    }
    for (int i = ctx->rank; i < diff.rank(); ++i) {
        if (diff[i] != 0) {
            return false;
        }
    }
    return true;
}

LatticeVector shift_key(const ContextPtr& ctx, const LatticeVector& m, std::int64_t k)
{
    LatticeVector s(ctx->key_size());
    for (int i = 0; i < ctx->rank; ++i) {
        s[i] = checked_mul(m[i], k);
    }
    return s;
}

struct PendingBend {
    Point2 point;
    std::vector<std::size_t> walls;
    LatticeVector before;
    LatticeVector after;
};

class Search {
public:
    Search(const Diagram& d, const std::vector<Wall>& walls, const LatticeVector& key0, const Point2& q, int order)
        : d_(d), ctx_(d.ctx()), walls_(walls), key0_(key0), q_(q), order_(order),
          deg0_(d.ctx()->degree(d.ctx()->key_m(key0)))
    {
    }

    std::vector<BrokenLine> run(const LatticeVector& final_key)
    {
        out_.clear();
        std::vector<PendingBend> bends;
        trace(q_, final_key, bends);
        return out_;
    }

private:
    void trace(const Point2& x, const LatticeVector& key, std::vector<PendingBend>& bends)
    {
        LatticeVector vel = velocity(d_, key);
        if (vel.is_zero()) {
            // Stationary segments are not broken lines.
            return;
        }
        Point2 b = to_point(-vel);
        Rational best;
        bool found = false;
        std::vector<std::size_t> cluster;
        for (std::size_t i = 0; i < walls_.size(); ++i) {
            const SupportR2& sup = walls_[i].support;
            if (sup.contains(x)) {
                continue;
            }
            Point2 u = to_point(sup.direction);
            Rational det = cross(b, u);
            Point2 bx = sup.base - x;
            if (det == 0) {
                bool ahead = sup.kind == SupportR2::Kind::line || dot(b, sup.direction) > 0;
                if (cross(bx, b) == 0 && ahead) {
                    throw GenericityError("broken line runs along a wall from " + x.str());
                }
                continue;
            }
            Rational s = cross(bx, u) / det;
            Rational r = cross(bx, b) / det;
            if (s <= 0 || (sup.kind == SupportR2::Kind::ray && r < 0)) {
                continue;
            }
            if (!found || s < best) {
                best = s;
                found = true;
                cluster.assign(1, i);
            } else if (s == best) {
                cluster.push_back(i);
            }
        }
        if (!found) {
            if (key == key0_) {
                record(bends);
            }
            return;
        }
        Point2 y = x + b * best;
        const SupportR2& first = walls_[cluster.front()].support;
        for (std::size_t i : cluster) {
            const SupportR2& sup = walls_[i].support;
            if (!sup.collinear(first)) {
                throw GenericityError("broken line meets a joint at " + y.str());
            }
            if (sup.kind == SupportR2::Kind::ray && sup.base == y) {
                throw GenericityError("broken line meets the base of a wall at " + y.str());
            }
        }
        const LatticeVector& mw = walls_[cluster.front()].m;
        Point2 dir = to_point(first.direction);
        for (std::int64_t k = 0;; ++k) {
            LatticeVector before = key - shift_key(ctx_, mw, k);
            if (!dominates(ctx_, before, key0_)) {
                break;
            }
            if (k == 0) {
                trace(y, before, bends);
                continue;
            }
            // A bend needs the incoming segment to cross the walls transversally, else the action vanishes.
            if (cross(to_point(velocity(d_, before)), dir) == 0) {
                continue;
            }
            bends.push_back({y, cluster, before, key});
            trace(y, before, bends);
            bends.pop_back();
        }
    }

    void record(const std::vector<PendingBend>& backward)
    {
        BrokenLine line;
        line.initial_key = key0_;
        line.end = q_;
        AlgebraElement a(ctx_, order_, deg0_);
        a.add_term(key0_, Coefficient(1));
        LatticeVector key = key0_;
        for (auto it = backward.rbegin(); it != backward.rend(); ++it) {
            Point2 tangent = to_point(velocity(d_, it->before));
            LieElement log(ctx_, order_);
            for (std::size_t w : it->walls) {
                log += walls_[w].theta.log().with_order(order_) * Rational(crossing_sign(walls_[w], d_.mode(), tangent));
            }
            AlgebraElement next = apply(GroupElement(log), a);
            Coefficient c = next.coeff(it->after);
            if (c.is_zero()) {
                return;
            }
            a = AlgebraElement(ctx_, order_, deg0_);
            a.add_term(it->after, c);
            line.bends.push_back({it->point, it->walls, it->before, it->after, c});
            key = it->after;
        }
        line.final_key = key;
        line.coeff = a.coeff(key);
        out_.push_back(std::move(line));
    }

    const Diagram& d_;
    ContextPtr ctx_;
    const std::vector<Wall>& walls_;
    LatticeVector key0_;
    Point2 q_;
    int order_;
    std::int64_t deg0_;
    std::vector<BrokenLine> out_;
};

void final_keys(const ContextPtr& ctx, const LatticeVector& key0, int order, std::vector<LatticeVector>& out)
{
    const int r = ctx->rank;
    const auto& w = ctx->grading.weights();
    LatticeVector delta(ctx->key_size());
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t budget) {
        if (i == r) {
            out.push_back(key0 + delta);
            return;
        }
        for (std::int64_t c = 0; c * w[static_cast<std::size_t>(i)] <= budget; ++c) {
            delta[i] = c;
            rec(i + 1, budget - c * w[static_cast<std::size_t>(i)]);
        }
        delta[i] = 0;
    };
    rec(0, order - 1);
}

} // namespace

std::vector<BrokenLine> enumerate_broken_lines(const Diagram& d, const LatticeVector& key0, const Point2& q,
                                               int order, Exec exec)
{
    const ContextPtr& ctx = d.ctx();
    if (key0.rank() != ctx->key_size()) {
        throw std::invalid_argument("initial key " + key0.str() + " has the wrong length");
    }
    std::vector<Wall> walls = d.active_walls(order);
    for (const auto& w : walls) {
        if (w.support.contains(q)) {
            throw GenericityError("endpoint " + q.str() + " lies on a wall");
        }
    }
    std::vector<LatticeVector> finals;
    final_keys(ctx, key0, order, finals);
    std::vector<std::vector<BrokenLine>> found(finals.size());
    std::vector<std::string> errors(finals.size());
    const long count = static_cast<long>(finals.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long i = 0; i < count; ++i) {
        try {
            Search s(d, walls, key0, q, order);
            found[static_cast<std::size_t>(i)] = s.run(finals[static_cast<std::size_t>(i)]);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    std::vector<BrokenLine> out;
    for (std::size_t i = 0; i < finals.size(); ++i) {
        if (!errors[i].empty()) {
            throw GenericityError(errors[i]);
        }
        for (auto& l : found[i]) {
            out.push_back(std::move(l));
        }
    }
    return out;
}

AlgebraElement theta(const Diagram& d, const LatticeVector& key0, const Point2& q, int order, Exec exec)
{
    const ContextPtr& ctx = d.ctx();
    AlgebraElement sum(ctx, order, ctx->degree(ctx->key_m(key0)));
    if (key0.is_zero()) {
        sum.add_term(key0, Coefficient(1));
        return sum;
    }
    for (const auto& l : enumerate_broken_lines(d, key0, q, order, exec)) {
        sum.add_term(l.final_key, l.coeff);
    }
    return sum;
}

namespace {

// Whether some point of the support satisfies x >= c.x and y >= c.y (strict when requested).
bool meets_quadrant(const SupportR2& sup, const Point2& c, bool strict)
{
    // Feasible s for base + s d: intersect half-lines defined by two linear inequalities.
    bool has_lo = sup.kind == SupportR2::Kind::ray, has_hi = false;
    Rational lo = 0, hi = 0;
    bool lo_strict = false, hi_strict = false;
    auto constrain = [&](const Rational& b, long d, const Rational& target) {
        // b + s d >= target (or >)
        if (d == 0) {
            return strict ? b > target : b >= target;
        }
        Rational s = (target - b) / Rational(d);
        if (d > 0) {
            if (!has_lo || s > lo || (s == lo && strict)) {
                lo_strict = has_lo && s == lo ? (lo_strict || strict) : strict;
                lo = s;
                has_lo = true;
            }
        } else {
            if (!has_hi || s < hi || (s == hi && strict)) {
                hi_strict = has_hi && s == hi ? (hi_strict || strict) : strict;
                hi = s;
                has_hi = true;
            }
        }
        return true;
    };
    if (!constrain(sup.base.x, static_cast<long>(sup.direction[0]), c.x)) {
        return false;
    }
    if (!constrain(sup.base.y, static_cast<long>(sup.direction[1]), c.y)) {
        return false;
    }
    if (!has_lo || !has_hi) {
        return true;
    }
    if (lo < hi) {
        return true;
    }
    return lo == hi && !lo_strict && !hi_strict;
}

} // namespace

Point2 base_chamber_point(const Diagram& d, const LatticeVector& key0, int order)
{
    std::vector<Wall> walls = d.active_walls(order);
    const ContextPtr& ctx = d.ctx();
    Point2 q0;
    bool strict = false;
    if (d.mode() == Mode::tropical) {
        LatticeVector m = ctx->key_m(key0);
        for (int i = 0; i < m.rank(); ++i) {
            if (m[i] < 0) {
                throw std::invalid_argument("transport base chamber needs m in the cone, got " + m.str());
            }
        }
        Rational x = 0, y = 0;
        for (const auto& j : joints(walls)) {
            x = std::max(x, j.x);
            y = std::max(y, j.y);
        }
        for (const auto& w : walls) {
            x = std::max(x, w.support.base.x);
            y = std::max(y, w.support.base.y);
        }
        q0 = Point2{x + 1, y + 1};
    } else {
        q0 = Point2{0, 0};
        strict = true;
    }
    for (const auto& w : walls) {
        if (meets_quadrant(w.support, q0, strict)) {
            throw GenericityError("no wall-free base chamber: a wall meets the chamber at " + q0.str());
        }
    }
    if (strict) {
        q0 = Point2{1, 1};
    }
    return q0;
}

AlgebraElement theta_by_transport(const Diagram& d, const LatticeVector& key0, const Point2& q, int order)
{
    const ContextPtr& ctx = d.ctx();
    AlgebraElement mono(ctx, order, ctx->degree(ctx->key_m(key0)));
    mono.add_term(key0, Coefficient(1));
    if (key0.is_zero()) {
        return mono;
    }
    Point2 q0 = base_chamber_point(d, key0, order);
    std::vector<Wall> walls = d.active_walls(order);
    std::vector<PiecewisePath> candidates{PiecewisePath{{q0, q}}};
    Point2 mid = (q0 + q) * Rational(1, 2);
    for (long j = 1; j <= 40; ++j) {
        Point2 off{frac(j, 7 * j + 3), frac(-j * (j % 3 + 1), 5 * j + 2)};
        candidates.push_back(PiecewisePath{{q0, mid + off * Rational(j), q}});
    }
    for (const auto& path : candidates) {
        try {
            GroupElement g = path_ordered_product(path, walls, d.mode(), ctx, order);
            return apply(g, mono);
        } catch (const GenericityError&) {
        }
    }
    throw GenericityError("no generic transport path to " + q.str());
}

WallCrossingReport check_wall_crossing(const Diagram& d, const LatticeVector& key0, const PiecewisePath& rho,
                                       int order)
{
    if (rho.vertices.size() < 2) {
        throw std::invalid_argument("wall-crossing path needs at least two vertices");
    }
    WallCrossingReport r;
    AlgebraElement start = theta(d, key0, rho.vertices.front(), order);
    r.lhs = theta(d, key0, rho.vertices.back(), order);
    r.rhs = apply(path_ordered_product(rho, d, order), start);
    r.discrepancy = r.lhs - r.rhs;
    r.holds = r.discrepancy.is_zero();
    return r;
}

OrbitSumReport orbit_sum_check(const TreeFamily& family, const ContextPtr& ctx, const BrokenLine& line, int order)
{
    if (family.mode != Mode::tropical || ctx->backend != Backend::classical) {
        throw std::invalid_argument("orbit sums are implemented for classical tropical diagrams");
    }
    // Per bend: all multisets of trees through the bend point whose exponents sum to the bend.
    std::vector<std::vector<std::vector<int>>> per_bend;
    for (const auto& bend : line.bends) {
        LatticeVector target = bend.key_after - bend.key_before;
        std::vector<int> cands;
        for (std::size_t i = 0; i < family.trees.size(); ++i) {
            const TreeInfo& t = family.trees[i];
            if (!t.g.is_zero() && t.support.contains_in_relative_interior(bend.point)) {
                cands.push_back(static_cast<int>(i));
            }
        }
        std::vector<std::vector<int>> sets;
        std::vector<int> cur;
        std::function<void(std::size_t, LatticeVector)> rec = [&](std::size_t from, LatticeVector rest) {
            if (rest.is_zero()) {
                sets.push_back(cur);
                return;
            }
            for (std::size_t c = from; c < cands.size(); ++c) {
                LatticeVector left = rest - family.trees[static_cast<std::size_t>(cands[c])].m;
                if (left[0] < 0 || left[1] < 0) {
                    continue;
                }
                cur.push_back(cands[c]);
                rec(c, left);
                cur.pop_back();
            }
        };
        rec(0, target);
        per_bend.push_back(std::move(sets));
    }
    OrbitSumReport rep;
    rep.line_monomial = line.monomial(ctx, order);
    rep.tree_sum = AlgebraElement(ctx, order, ctx->degree(line.initial_key));
    std::vector<int> choice(per_bend.size(), 0);
    std::function<void(std::size_t, std::vector<int>&)> walk = [&](std::size_t b, std::vector<int>& attached) {
        if (b == per_bend.size()) {
            std::vector<const TreeInfo*> ts;
            Rational weight = 1;
            for (int idx : attached) {
                ts.push_back(&family.trees[static_cast<std::size_t>(idx)]);
                weight /= Rational(ts.back()->aut);
            }
            // |Iso|: product of factorials of repeated trees at each bend.
            for (std::size_t bb = 0; bb < per_bend.size(); ++bb) {
                const auto& set = per_bend[bb][static_cast<std::size_t>(choice[bb])];
                for (std::size_t i = 0; i < set.size();) {
                    std::size_t j = i;
                    while (j < set.size() && set[j] == set[i]) {
                        ++j;
                    }
                    weight /= factorial(static_cast<int>(j - i));
                    i = j;
                }
            }
            MarkedCore core = marked_core(line.initial_key, ts, ctx, order);
            int sgn = (attached.size() % 2 == 0) ? 1 : -1;
            rep.tree_sum += core.a * (weight * Rational(sgn * core.eps));
            ++rep.marked_trees;
            return;
        }
        for (std::size_t s = 0; s < per_bend[b].size(); ++s) {
            choice[b] = static_cast<int>(s);
            std::size_t before = attached.size();
            attached.insert(attached.end(), per_bend[b][s].begin(), per_bend[b][s].end());
            walk(b + 1, attached);
            attached.resize(before);
        }
    };
    std::vector<int> attached;
    walk(0, attached);
    rep.holds = rep.tree_sum == rep.line_monomial;
    return rep;
}

} // namespace scatter
