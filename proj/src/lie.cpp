#include "scatter/lie.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace scatter {

std::string to_string(Backend b)
{
    return b == Backend::classical ? "classical" : "quantum";
}

Backend parse_backend(const std::string& s)
{
    if (s == "classical") {
        return Backend::classical;
    }
    if (s == "quantum") {
        return Backend::quantum;
    }
    throw std::invalid_argument("unknown backend '" + s + "'");
}

std::shared_ptr<const LieContext> LieContext::classical(int rank)
{
    auto c = std::make_shared<LieContext>();
    c->backend = Backend::classical;
    c->rank = rank;
    c->grading = GradingFunctional::standard(rank);
    c->cone = ConeData::standard(rank);
    c->omega = SkewForm::zero(rank);
    return c;
}

std::shared_ptr<const LieContext> LieContext::quantum(const SkewForm& omega)
{
    if (!omega.nondegenerate()) {
        throw std::invalid_argument("quantum backend needs a non-degenerate skew form");
    }
    auto c = std::make_shared<LieContext>();
    c->backend = Backend::quantum;
    c->rank = omega.rank();
    c->grading = GradingFunctional::standard(c->rank);
    c->cone = ConeData::standard(c->rank);
    c->omega = omega;
    return c;
}

bool LieContext::same_as(const LieContext& o) const
{
    return backend == o.backend && rank == o.rank && grading.weights() == o.grading.weights() &&
           omega.rows() == o.omega.rows();
}

// ---------------------------------------------------------------- LieElement

LieElement::LieElement(ContextPtr ctx, int order) : ctx_(std::move(ctx)), order_(order)
{
    if (order_ < 1) {
        throw std::invalid_argument("truncation order must be at least 1");
    }
}

static bool block_zero(const Block& b)
{
    for (const auto& c : b) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

LieElement LieElement::term(ContextPtr ctx, int order, const LatticeVector& m, const LatticeVector& n,
                            const Coefficient& c)
{
    if (ctx->backend != Backend::classical) {
        throw std::invalid_argument("term(m, n, c) is for the classical backend");
    }
    LieElement e(std::move(ctx), order);
    Block b(static_cast<std::size_t>(n.rank()));
    for (int i = 0; i < n.rank(); ++i) {
        b[static_cast<std::size_t>(i)] = c * Rational(static_cast<long>(n[i]));
    }
    e.add_block(m, b);
    return e;
}

LieElement LieElement::qterm(ContextPtr ctx, int order, const LatticeVector& m, const Coefficient& c)
{
    if (ctx->backend != Backend::quantum) {
        throw std::invalid_argument("qterm(m, c) is for the quantum backend");
    }
    LieElement e(std::move(ctx), order);
    e.add_block(m, Block{c});
    return e;
}

std::int64_t LieElement::min_degree() const
{
    std::int64_t d = std::numeric_limits<std::int64_t>::max();
    for (const auto& [m, b] : blocks_) {
        d = std::min(d, ctx_->degree(m));
    }
    return d;
}

std::int64_t LieElement::max_degree() const
{
    std::int64_t d = 0;
    for (const auto& [m, b] : blocks_) {
        d = std::max(d, ctx_->degree(m));
    }
    return d;
}

void LieElement::add_block(const LatticeVector& m, const Block& b)
{
    if (static_cast<int>(b.size()) != ctx_->block_size()) {
        throw std::invalid_argument("block size does not match the backend");
    }
    if (m.is_zero() || !ctx_->cone.contains(m)) {
        throw std::invalid_argument("graded component " + m.str() + " is not in the positive cone");
    }
    if (ctx_->degree(m) >= order_) {
        return;
    }
    if (ctx_->backend == Backend::classical) {
        Coefficient s;
        for (int i = 0; i < m.rank(); ++i) {
            s += b[static_cast<std::size_t>(i)] * Rational(static_cast<long>(m[i]));
        }
        if (!s.is_zero()) {
            throw std::invalid_argument("classical term violates <m, n> = 0 at m = " + m.str());
        }
    }
    auto it = blocks_.find(m);
    if (it == blocks_.end()) {
        if (!block_zero(b)) {
            blocks_.emplace(m, b);
        }
        return;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        it->second[i] += b[i];
    }
    if (block_zero(it->second)) {
        blocks_.erase(it);
    }
}

void LieElement::check_compatible(const LieElement& o) const
{
    if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_)) {
        throw std::invalid_argument("Lie elements from different backends");
    }
    if (order_ != o.order_) {
        throw std::invalid_argument("truncation order mismatch: " + std::to_string(order_) + " vs " +
                                    std::to_string(o.order_));
    }
}

LieElement LieElement::operator+(const LieElement& o) const
{
    LieElement r = *this;
    r += o;
    return r;
}

LieElement& LieElement::operator+=(const LieElement& o)
{
    check_compatible(o);
    for (const auto& [m, b] : o.blocks_) {
        auto it = blocks_.find(m);
        if (it == blocks_.end()) {
            blocks_.emplace(m, b);
            continue;
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            it->second[i] += b[i];
        }
        if (block_zero(it->second)) {
            blocks_.erase(it);
        }
    }
    return *this;
}

LieElement LieElement::operator-() const
{
    LieElement r = *this;
    for (auto& [m, b] : r.blocks_) {
        for (auto& c : b) {
            c = -c;
        }
    }
    return r;
}

LieElement LieElement::operator-(const LieElement& o) const
{
    return *this + (-o);
}

LieElement LieElement::operator*(const Coefficient& c) const
{
    LieElement r(ctx_, order_);
    for (const auto& [m, b] : blocks_) {
        Block nb = b;
        for (auto& x : nb) {
            x = x * c;
        }
        if (!block_zero(nb)) {
            r.blocks_.emplace(m, std::move(nb));
        }
    }
    return r;
}

LieElement LieElement::operator*(const Rational& s) const
{
    LieElement r(ctx_, order_);
    if (s == 0) {
        return r;
    }
    r.blocks_ = blocks_;
    for (auto& [m, b] : r.blocks_) {
        for (auto& x : b) {
            x = x * s;
        }
    }
    return r;
}

LieElement LieElement::truncated(int k) const
{
    if (k > order_) {
        throw std::invalid_argument("cannot raise truncation order");
    }
    LieElement r(ctx_, k);
    for (const auto& [m, b] : blocks_) {
        if (ctx_->degree(m) < k) {
            r.blocks_.emplace(m, b);
        }
    }
    return r;
}

LieElement LieElement::with_order(int k) const
{
    LieElement r(ctx_, k);
    for (const auto& [m, b] : blocks_) {
        if (ctx_->degree(m) < k) {
            r.blocks_.emplace(m, b);
        }
    }
    return r;
}

LieElement LieElement::homogeneous_degree(std::int64_t d) const
{
    LieElement r(ctx_, order_);
    for (const auto& [m, b] : blocks_) {
        if (ctx_->degree(m) == d) {
            r.blocks_.emplace(m, b);
        }
    }
    return r;
}

LieElement LieElement::block_at(const LatticeVector& m) const
{
    LieElement r(ctx_, order_);
    auto it = blocks_.find(m);
    if (it != blocks_.end()) {
        r.blocks_.emplace(m, it->second);
    }
    return r;
}

bool LieElement::operator==(const LieElement& o) const
{
    return order_ == o.order_ && blocks_ == o.blocks_ &&
           ((!ctx_ && !o.ctx_) || (ctx_ && o.ctx_ && ctx_->same_as(*o.ctx_)));
}

std::string LieElement::str() const
{
    if (blocks_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, b] : blocks_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        if (ctx_->backend == Backend::quantum) {
            os << "(" << b[0].str() << ")*zh^" << m.str();
        } else {
            os << "z^" << m.str() << "*d[";
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (i) {
                    os << "; ";
                }
                os << b[i].str();
            }
            os << "]";
        }
    }
    return os.str();
}

static Coefficient pair_block(const LatticeVector& m, const Block& n)
{
    Coefficient s;
    for (int i = 0; i < m.rank(); ++i) {
        if (m[i] != 0) {
            s += n[static_cast<std::size_t>(i)] * Rational(static_cast<long>(m[i]));
        }
    }
    return s;
}

LieElement bracket(const LieElement& x, const LieElement& y)
{
    if (!x.ctx() || !y.ctx() || !x.ctx()->same_as(*y.ctx())) {
        throw std::invalid_argument("bracket of elements from different backends");
    }
    if (x.order() != y.order()) {
        throw std::invalid_argument("bracket with truncation order mismatch");
    }
    const auto& ctx = x.ctx();
    int order = x.order();
    LieElement r(ctx, order);
    if (x.is_zero() || y.is_zero() || x.min_degree() + y.min_degree() >= order) {
        return r;
    }
    std::map<LatticeVector, Block> acc;
    for (const auto& [m1, b1] : x.blocks()) {
        std::int64_t d1 = ctx->degree(m1);
        for (const auto& [m2, b2] : y.blocks()) {
            if (d1 + ctx->degree(m2) >= order) {
                continue;
            }
            LatticeVector m3 = m1 + m2;
            if (ctx->backend == Backend::classical) {
                Coefficient a = pair_block(m2, b1);
                Coefficient b = pair_block(m1, b2);
                if (a.is_zero() && b.is_zero()) {
                    continue;
                }
                Block n3(b1.size());
                for (std::size_t i = 0; i < b1.size(); ++i) {
                    n3[i] = a * b2[i] - b * b1[i];
                }
                auto it = acc.find(m3);
                if (it == acc.end()) {
                    acc.emplace(m3, std::move(n3));
                } else {
                    for (std::size_t i = 0; i < n3.size(); ++i) {
                        it->second[i] += n3[i];
                    }
                }
            } else {
                std::int64_t w = ctx->omega(m1, m2);
                if (w == 0) {
                    continue;
                }
                Coefficient c = (b1[0] * b2[0]).mul_vfrac(VFrac(v_difference(static_cast<int>(w))));
                auto it = acc.find(m3);
                if (it == acc.end()) {
                    acc.emplace(m3, Block{c});
                } else {
                    it->second[0] += c;
                }
            }
        }
    }
    for (auto& [m, b] : acc) {
        if (!block_zero(b)) {
            r.add_block(m, b);
        }
    }
    return r;
}

std::optional<std::pair<LatticeVector, Coefficient>> split_block(const Block& b)
{
    // Find a reference entry, then require every coordinate to be a rational multiple of it.
    int ref = -1;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b[i].is_zero()) {
            ref = static_cast<int>(i);
            break;
        }
    }
    if (ref < 0) {
        return std::nullopt;
    }
    const Coefficient& c0 = b[static_cast<std::size_t>(ref)];
    const auto& lead = c0.terms().front();
    const auto& lead_num = lead.second.num().terms().front();
    std::vector<Rational> ratio(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        VFrac f = b[i].coeff(lead.first);
        if (f.is_zero()) {
            ratio[i] = 0;
        } else {
            if (f.den() != lead.second.den()) {
                return std::nullopt;
            }
            ratio[i] = f.num().coeff(lead_num.first) / lead_num.second;
        }
        if (!(c0 * ratio[i] == b[i])) {
            return std::nullopt;
        }
    }
    // Clear denominators to get an integer vector, then make it primitive with lex sign.
    Integer l = 1;
    for (const auto& q : ratio) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    }
    LatticeVector n(static_cast<int>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
        Rational v = ratio[i] * Rational(l);
        n[static_cast<int>(i)] = v.get_num().get_si();
    }
    std::int64_t g = n.content();
    int s = n.lex_sign();
    LatticeVector prim = n.primitive() * s;
    // N = c0 * ratio = c0 * n / l = (c0 * g * s / l) * prim
    Coefficient c = c0 * (Rational(g * s) / Rational(l));
    return std::make_pair(prim, c);
}

std::map<LatticeVector, std::optional<LatticeVector>> tropical_membership(const LieElement& g)
{
    std::map<LatticeVector, std::optional<LatticeVector>> out;
    const auto& ctx = g.ctx();
    for (const auto& [m, b] : g.blocks()) {
        if (ctx->backend == Backend::quantum) {
            LatticeVector p = ctx->omega.p_map(m);
            out[m] = p.primitive() * p.primitive().lex_sign();
        } else {
            auto s = split_block(b);
            if (s) {
                out[m] = s->first;
            } else {
                out[m] = std::nullopt;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(ContextPtr ctx, int order, std::int64_t floor)
    : ctx_(std::move(ctx)), order_(order), floor_(floor)
{
}

AlgebraElement AlgebraElement::monomial(ContextPtr ctx, int order, const LatticeVector& key,
                                        const Coefficient& c)
{
    if (key.rank() != ctx->key_size()) {
        throw std::invalid_argument("algebra key " + key.str() + " has the wrong length");
    }
    std::int64_t floor = ctx->degree(ctx->key_m(key));
    AlgebraElement a(std::move(ctx), order, floor);
    a.add_term(key, c);
    return a;
}

Coefficient AlgebraElement::coeff(const LatticeVector& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? Coefficient() : it->second;
}

void AlgebraElement::add_term(const LatticeVector& key, const Coefficient& c)
{
    if (c.is_zero()) {
        return;
    }
    if (ctx_->degree(ctx_->key_m(key)) - floor_ >= order_) {
        return;
    }
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const
{
    AlgebraElement r = *this;
    r += o;
    return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o)
{
    if (!ctx_) {
        *this = o;
        return *this;
    }
    if (!o.ctx_) {
        return *this;
    }
    if (o.order_ != order_) {
        throw std::invalid_argument("algebra elements with different truncation orders");
    }
    if (o.floor_ < floor_) {
        // Re-express with the lower floor; only terms already present are kept.
        floor_ = o.floor_;
        std::erase_if(terms_, [&](const auto& kv) {
            return ctx_->degree(ctx_->key_m(kv.first)) - floor_ >= order_;
        });
    }
    for (const auto& [k, c] : o.terms_) {
        add_term(k, c);
    }
    return *this;
}

AlgebraElement AlgebraElement::operator*(const Rational& s) const
{
    AlgebraElement r(ctx_, order_, floor_);
    for (const auto& [k, c] : terms_) {
        r.add_term(k, c * s);
    }
    return r;
}

AlgebraElement AlgebraElement::operator*(const Coefficient& x) const
{
    AlgebraElement r(ctx_, order_, floor_);
    for (const auto& [k, c] : terms_) {
        r.add_term(k, c * x);
    }
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const
{
    return *this + o * Rational(-1);
}

AlgebraElement AlgebraElement::product(const AlgebraElement& o) const
{
    AlgebraElement r(ctx_, order_, floor_ + o.floor_);
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            LatticeVector k = k1 + k2;
            Coefficient c = c1 * c2;
            if (ctx_->backend == Backend::quantum) {
                int r0 = ctx_->rank;
                LatticeVector m1 = k1.slice(0, r0), n1 = k1.slice(r0, r0);
                LatticeVector m2 = k2.slice(0, r0), n2 = k2.slice(r0, r0);
                std::int64_t w = ctx_->omega(m1, m2) + pairing(m1, n2) - pairing(m2, n1);
                c = c.shifted(static_cast<int>(w));
            }
            r.add_term(k, c);
        }
    }
    return r;
}

AlgebraElement AlgebraElement::truncated(int k) const
{
    if (k > order_) {
        throw std::invalid_argument("cannot raise truncation order");
    }
    AlgebraElement r(ctx_, k, floor_);
    for (const auto& [key, c] : terms_) {
        r.add_term(key, c);
    }
    return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const
{
    return terms_ == o.terms_;
}

std::string AlgebraElement::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c.str() << ")*z^" << k.str();
    }
    return os.str();
}

AlgebraElement act(const LieElement& g, const AlgebraElement& a)
{
    const auto& ctx = a.ctx();
    AlgebraElement r(ctx, a.order(), a.floor());
    if (g.is_zero() || a.is_zero()) {
        return r;
    }
    int rank = ctx->rank;
    for (const auto& [m, b] : g.blocks()) {
        for (const auto& [key, c] : a.terms()) {
            LatticeVector nk = key;
            for (int i = 0; i < rank; ++i) {
                nk[i] = checked_add(nk[i], m[i]);
            }
            if (ctx->backend == Backend::classical) {
                Coefficient s = pair_block(key, b);
                if (!s.is_zero()) {
                    r.add_term(nk, s * c);
                }
            } else {
                LatticeVector mk = key.slice(0, rank), nn = key.slice(rank, rank);
                std::int64_t w = ctx->omega(m, mk) + pairing(m, nn);
                if (w != 0) {
                    r.add_term(nk, (b[0] * c).mul_vfrac(VFrac(v_difference(static_cast<int>(w)))));
                }
            }
        }
    }
    return r;
}

} // namespace scatter
