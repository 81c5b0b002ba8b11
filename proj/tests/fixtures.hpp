#pragma once

#include "scatter/completion.hpp"
#include "scatter/quiver.hpp"

namespace fix {

using namespace scatter;

inline Coefficient t(int i, int e = 1)
{
    return Coefficient::monomial(NilpotentMonomial::t(i, e));
}

// log(1 + t_i z^m) d_n
inline LieElement log_one_plus(const ContextPtr& ctx, int order, const LatticeVector& m, const LatticeVector& n, int i)
{
    LieElement log(ctx, order);
    for (long j = 1; ctx->degree(m * j) < order; ++j) {
        log += LieElement::term(ctx, order, m * j, n, t(i, static_cast<int>(j)) * frac(j % 2 ? 1 : -1, j));
    }
    return log;
}

inline Wall line_wall(const ContextPtr& ctx, int order, const LatticeVector& m, const LatticeVector& n, int i,
                      Point2 base = {0, 0})
{
    Wall w;
    w.m = m;
    w.n = n;
    w.support = SupportR2::line(base, LatticeVector{-n[1], n[0]});
    w.theta = GroupElement(log_one_plus(ctx, order, m, n, i));
    w.initial = true;
    return w;
}

// Walls 1 + t1 z^(1,0) on the x-axis and 1 + t2 z^(0,1) on the y-axis.
inline Diagram two_wall(int order)
{
    auto ctx = LieContext::classical(2);
    Diagram d(Mode::tropical, ctx, order);
    d.add_wall(line_wall(ctx, order, {1, 0}, {0, 1}, 1));
    d.add_wall(line_wall(ctx, order, {0, 1}, {1, 0}, 2));
    return d;
}

inline QuiverData a2()
{
    return QuiverData::parse("1:2=1");
}

inline QuiverData kronecker()
{
    return QuiverData::parse("1:2=2");
}

inline Point2 pt(long x, long y, long den = 1)
{
    return Point2{frac(x, den), frac(y, den)};
}

} // namespace fix
