#pragma once

#include "scatter/lie.hpp"

#include <vector>

namespace scatter {

// Element of exp(h^{<k}), stored as its log.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(ContextPtr ctx, int order) : log_(std::move(ctx), order) {}
    explicit GroupElement(LieElement log) : log_(std::move(log)) {}

    const LieElement& log() const { return log_; }
    const ContextPtr& ctx() const { return log_.ctx(); }
    int order() const { return log_.order(); }
    bool is_identity() const { return log_.is_zero(); }

    GroupElement inverse() const { return GroupElement(-log_); }
    // g^e for e = +1 or -1.
    GroupElement signed_power(int e) const { return e >= 0 ? *this : inverse(); }
    GroupElement truncated(int k) const { return GroupElement(log_.truncated(k)); }

    bool operator==(const GroupElement& o) const { return log_ == o.log_; }

private:
    LieElement log_;
};

// log(exp(x) exp(y)) truncated at the common order.
LieElement bch(const LieElement& x, const LieElement& y);
GroupElement bch_product(const GroupElement& a, const GroupElement& b);
// Left-to-right product g_0 g_1 ... g_{n-1}.
GroupElement product(const ContextPtr& ctx, int order, const std::vector<GroupElement>& gs);

// exp(log a) acting on an algebra element: sum_j (1/j!) (log .)^j x.
AlgebraElement apply(const GroupElement& a, const AlgebraElement& x);

// Probe monomials on which the action is faithful: z^{e_i} (classical), zhat^{(0, e_i)} (quantum).
std::vector<AlgebraElement> default_probes(const ContextPtr& ctx, int order);
bool automorphism_equal(const GroupElement& a, const GroupElement& b);
bool automorphism_equal(const GroupElement& a, const GroupElement& b,
                        const std::vector<AlgebraElement>& probes);

} // namespace scatter
