#include "scatter/completion.hpp"

#include "scatter/trees.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace scatter {

namespace {

// Half-plane index then cross product: counterclockwise order starting at angle 0.
bool angle_less(const LatticeVector& a, const LatticeVector& b)
{
    auto half = [](const LatticeVector& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) {
        return ha < hb;
    }
    return a[0] * b[1] - a[1] * b[0] > 0;
}

struct Spoke {
    LatticeVector dir;
    std::size_t wall;
};

std::vector<Spoke> spokes_at(const std::vector<Wall>& walls, const Point2& joint)
{
    std::vector<Spoke> out;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const SupportR2& s = walls[i].support;
        if (!s.contains(joint)) {
            continue;
        }
        if (s.kind == SupportR2::Kind::ray && s.base == joint) {
            out.push_back({s.direction, i});
        } else {
            out.push_back({s.direction, i});
            out.push_back({-s.direction, i});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Spoke& a, const Spoke& b) { return angle_less(a.dir, b.dir); });
    return out;
}

Point2 ccw_tangent(const LatticeVector& u)
{
    return Point2{Rational(static_cast<long>(-u[1])), Rational(static_cast<long>(u[0]))};
}

struct NewWall {
    Point2 base;
    LatticeVector dir;
    LatticeVector m;
    LatticeVector n;
    LieElement log;
};

std::vector<NewWall> factor_joint(const std::vector<Wall>& walls, Mode mode, const ContextPtr& ctx,
                                  int degree, const Point2& joint)
{
    const int k = degree + 1;
    LieElement g = joint_product(walls, mode, ctx, k, joint).log();
    if (!g.is_zero() && g.min_degree() < degree) {
        throw CompletionError("non-central discrepancy of degree " + std::to_string(g.min_degree()) +
                              " at joint " + joint.str() + " while completing degree " +
                              std::to_string(degree));
    }
    std::vector<NewWall> out;
    for (const auto& [m, block] : g.blocks()) {
        NewWall nw;
        nw.base = joint;
        nw.m = m.primitive();
        if (mode == Mode::tropical) {
            nw.dir = -nw.m;
            if (ctx->backend == Backend::classical) {
                auto split = split_block(block);
                if (!split) {
                    throw CompletionError("discrepancy block at " + m.str() + " is not tropical");
                }
                nw.n = split->first;
            } else {
                LatticeVector p = ctx->omega.p_map(m);
                nw.n = p.primitive() * p.primitive().lex_sign();
            }
        } else {
            LatticeVector p = ctx->omega.p_map(m);
            if (p.is_zero()) {
                throw CompletionError("flow direction -p(m) vanishes at m = " + m.str());
            }
            nw.dir = -p.primitive();
        }
        Wall probe;
        probe.m = nw.m;
        probe.n = nw.n;
        int eps = crossing_sign(probe, mode, ccw_tangent(nw.dir));
        if (eps == 0) {
            throw CompletionError("new wall at " + joint.str() + " is tangent to the loop");
        }
        LieElement single(ctx, k);
        single.add_block(m, block);
        nw.log = single * Rational(-eps);
        out.push_back(std::move(nw));
    }
    return out;
}

} // namespace

GroupElement joint_product(const std::vector<Wall>& walls, Mode mode, const ContextPtr& ctx, int order,
                           const Point2& joint)
{
    std::vector<Spoke> sp = spokes_at(walls, joint);
    GroupElement total(ctx, order);
    for (std::size_t i = 0; i < sp.size();) {
        std::size_t j = i;
        LieElement log(ctx, order);
        Point2 t = ccw_tangent(sp[i].dir);
        while (j < sp.size() && sp[j].dir == sp[i].dir) {
            const Wall& w = walls[sp[j].wall];
            log += w.theta.log().with_order(order) * Rational(crossing_sign(w, mode, t));
            ++j;
        }
        total = bch_product(GroupElement(log), total);
        i = j;
    }
    return total;
}

Diagram complete(const Diagram& in, int order, Exec exec)
{
    if (order > in.order()) {
        throw std::invalid_argument("completion order exceeds the input diagram order");
    }
    const Mode mode = in.mode();
    const ContextPtr& ctx = in.ctx();
    if (mode == Mode::cone) {
        for (const auto& w : in.walls()) {
            if (!w.support.contains(Point2{0, 0})) {
                throw std::invalid_argument("cone diagrams need supports through the origin");
            }
        }
    }
    Diagram out = in.truncated(order);
    for (int d = 1; d < order; ++d) {
        std::vector<Wall> walls = out.active_walls(d + 1);
        std::vector<Point2> js = joints(walls);
        std::vector<std::vector<NewWall>> found(js.size());
        std::vector<std::string> errors(js.size());
        const long count = static_cast<long>(js.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
        for (long i = 0; i < count; ++i) {
            try {
                found[static_cast<std::size_t>(i)] =
                    factor_joint(walls, mode, ctx, d, js[static_cast<std::size_t>(i)]);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(i)] = e.what();
            }
        }
        for (const auto& e : errors) {
            if (!e.empty()) {
                throw CompletionError(e);
            }
        }
        std::vector<Wall> current = out.walls();
        for (const auto& list : found) {
            for (const auto& nw : list) {
                LieElement log = nw.log.with_order(order);
                auto same = std::find_if(current.begin(), current.end(), [&](const Wall& w) {
                    return !w.initial && w.support.kind == SupportR2::Kind::ray && w.support.base == nw.base &&
                           w.support.direction == nw.dir && w.m == nw.m && w.n == nw.n;
                });
                if (same != current.end()) {
                    same->theta = GroupElement(same->theta.log() + log);
                    continue;
                }
                Wall w;
                w.m = nw.m;
                w.n = nw.n;
                w.support = SupportR2::ray(nw.base, nw.dir);
                w.theta = GroupElement(log);
                current.push_back(std::move(w));
            }
        }
        Diagram next(mode, ctx, order);
        for (auto& w : current) {
            if (!w.theta.is_identity() || w.initial) {
                next.add_wall(std::move(w));
            }
        }
        out = std::move(next);
    }
    return out;
}

Diagram perturb_with_offsets(const Diagram& in, int l, const std::vector<Rational>& offsets)
{
    if (in.mode() != Mode::tropical || in.ctx()->backend != Backend::classical) {
        throw std::invalid_argument("perturbation needs a classical tropical diagram");
    }
    if (l < 1) {
        throw std::invalid_argument("perturbation needs l >= 1");
    }
    const ContextPtr& ctx = in.ctx();
    const int order = in.order();
    Diagram out(Mode::tropical, ctx, order);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < in.walls().size(); ++i) {
        const Wall& w = in.walls()[i];
        if (w.support.kind != SupportR2::Kind::line || !w.support.contains(Point2{0, 0})) {
            throw std::invalid_argument("perturbation needs full-line walls through the origin");
        }
        const int ti = static_cast<int>(i) + 1;
        // g_{ji} with t_i^j stripped, keyed by j.
        std::map<int, LieElement> parts;
        for (const auto& [m, block] : w.theta.log().blocks()) {
            std::int64_t j = m.content();
            if (m != w.m * j) {
                throw std::invalid_argument("wall log block off the wall's ray");
            }
            Block stripped(block.size());
            for (std::size_t c = 0; c < block.size(); ++c) {
                for (const auto& [mono, f] : block[c].terms()) {
                    NilpotentMonomial::Var tv{ti, 0};
                    if (mono.exponent(tv) != j) {
                        throw std::invalid_argument("coefficient of z^" + m.str() + " is not a multiple of t_" +
                                                    std::to_string(ti) + "^" + std::to_string(j));
                    }
                    stripped[c] += Coefficient::monomial(mono.without(tv), f);
                }
            }
            LieElement part(ctx, order);
            part.add_block(m, stripped);
            parts.emplace(static_cast<int>(j), part);
        }
        for (unsigned mask = 1; mask < (1u << l); ++mask) {
            std::vector<int> subset;
            Coefficient u = 1;
            for (int s = 0; s < l; ++s) {
                if (mask & (1u << s)) {
                    subset.push_back(s + 1);
                    u = u * Coefficient::monomial(NilpotentMonomial::u(ti, s + 1));
                }
            }
            const int j = static_cast<int>(subset.size());
            if (idx >= offsets.size()) {
                throw std::invalid_argument("not enough perturbation offsets");
            }
            const Rational& off = offsets[idx++];
            auto it = parts.find(j);
            if (it == parts.end()) {
                continue;
            }
            Wall pw;
            pw.m = w.m;
            pw.n = w.n;
            pw.initial = true;
            pw.tag = PerturbationTag{ti, subset};
            Point2 base = to_point(w.n) * off;
            pw.support = SupportR2::line(base, w.support.direction);
            pw.theta = GroupElement(it->second * (u * factorial(j)));
            out.add_wall(std::move(pw));
        }
    }
    return out;
}

PerturbResult perturb(const Diagram& in, int l, std::uint64_t seed, int order)
{
    const std::size_t count = in.walls().size() * ((std::size_t{1} << l) - 1);
    std::mt19937_64 rng(seed);
    for (int attempt = 1; attempt <= 64; ++attempt) {
        std::vector<Rational> offsets;
        for (std::size_t i = 0; i < count; ++i) {
            long num = static_cast<long>(rng() % 2001) - 1000;
            if (num == 0) {
                num = 1;
            }
            offsets.push_back(frac(num, 1009L * static_cast<long>(i + 1)));
        }
        Diagram d = perturb_with_offsets(in, l, offsets);
        if (check_generic(d, order).generic) {
            return PerturbResult{std::move(d), std::move(offsets), attempt};
        }
    }
    throw std::runtime_error("no generic perturbation found after 64 attempts");
}

} // namespace scatter
