#include "scatter/group.hpp"

#include <stdexcept>

namespace scatter {

// Varadarajan's recursion for the homogeneous BCH components Z_n:
//   Z_1 = X + Y
//   (n+1) Z_{n+1} = 1/2 [X - Y, Z_n] + sum_{p>=1} B_{2p}/(2p)! W_{2p}(n)
// where W_q(s) sums the nested brackets [Z_{k_1}, [..., [Z_{k_q}, X + Y]]] over k_1+...+k_q = s.
LieElement bch(const LieElement& x, const LieElement& y)
{
    if (x.order() != y.order()) {
        throw std::invalid_argument("bch: truncation order mismatch");
    }
    if (x.is_zero()) {
        return y;
    }
    if (y.is_zero()) {
        return x;
    }
    const int order = x.order();
    const LieElement sum = x + y;
    const LieElement diff = x - y;
    std::vector<LieElement> z{LieElement(x.ctx(), order), sum};
    // w[q][s]
    std::vector<std::vector<LieElement>> w(1, std::vector<LieElement>{sum});
    LieElement result = sum;
    const LieElement zero(x.ctx(), order);
    for (int n = 1; n + 1 < order; ++n) {
        // Fill W_q(n) for q = 1..n.
        w.emplace_back(std::vector<LieElement>(static_cast<std::size_t>(n) + 1, zero));
        for (auto& row : w) {
            row.resize(static_cast<std::size_t>(n) + 1, zero);
        }
        for (int q = 1; q <= n; ++q) {
            LieElement acc = zero;
            for (int k = 1; k <= n - (q - 1); ++k) {
                const LieElement& inner = w[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(n - k)];
                if (inner.is_zero() || z[static_cast<std::size_t>(k)].is_zero()) {
                    continue;
                }
                acc += bracket(z[static_cast<std::size_t>(k)], inner);
            }
            w[static_cast<std::size_t>(q)][static_cast<std::size_t>(n)] = acc;
        }
        LieElement next = bracket(diff, z[static_cast<std::size_t>(n)]) * Rational(1, 2);
        for (int p = 1; 2 * p <= n; ++p) {
            const LieElement& wt = w[static_cast<std::size_t>(2 * p)][static_cast<std::size_t>(n)];
            if (!wt.is_zero()) {
                next += wt * (bernoulli(2 * p) / Rational(factorial(2 * p)));
            }
        }
        next = next * Rational(1, n + 1);
        z.push_back(next);
        result += next;
    }
    return result;
}

GroupElement bch_product(const GroupElement& a, const GroupElement& b)
{
    if (!a.ctx() || !b.ctx() || !a.ctx()->same_as(*b.ctx())) {
        throw std::invalid_argument("bch_product: backend mismatch");
    }
    return GroupElement(bch(a.log(), b.log()));
}

GroupElement product(const ContextPtr& ctx, int order, const std::vector<GroupElement>& gs)
{
    GroupElement r(ctx, order);
    for (const auto& g : gs) {
        r = bch_product(r, g);
    }
    return r;
}

AlgebraElement apply(const GroupElement& a, const AlgebraElement& x)
{
    AlgebraElement result = x;
    AlgebraElement term = x;
    for (int j = 1; !term.is_zero(); ++j) {
        term = act(a.log(), term) * Rational(1, j);
        result += term;
    }
    return result;
}

std::vector<AlgebraElement> default_probes(const ContextPtr& ctx, int order)
{
    std::vector<AlgebraElement> out;
    for (int i = 0; i < ctx->rank; ++i) {
        LatticeVector key(ctx->key_size());
        key[ctx->backend == Backend::classical ? i : ctx->rank + i] = 1;
        out.push_back(AlgebraElement::monomial(ctx, order, key));
    }
    return out;
}

bool automorphism_equal(const GroupElement& a, const GroupElement& b,
                        const std::vector<AlgebraElement>& probes)
{
    for (const auto& p : probes) {
        if (!(apply(a, p) == apply(b, p))) {
            return false;
        }
    }
    return true;
}

bool automorphism_equal(const GroupElement& a, const GroupElement& b)
{
    if (a.order() != b.order()) {
        throw std::invalid_argument("automorphism_equal: truncation order mismatch");
    }
    return automorphism_equal(a, b, default_probes(a.ctx(), a.order()));
}

} // namespace scatter
