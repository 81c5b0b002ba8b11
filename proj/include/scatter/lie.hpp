#pragma once

#include "scatter/coeff.hpp"
#include "scatter/lattice.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace scatter {

enum class Backend { classical, quantum };

std::string to_string(Backend b);
Backend parse_backend(const std::string& s);

// Shared algebraic setup: backend, rank, grading, cone and (quantum) skew form.
struct LieContext {
    Backend backend = Backend::classical;
    int rank = 2;
    GradingFunctional grading;
    ConeData cone;
    SkewForm omega;

    static std::shared_ptr<const LieContext> classical(int rank);
    static std::shared_ptr<const LieContext> quantum(const SkewForm& omega);

    std::int64_t degree(const LatticeVector& m) const { return grading.value(m); }
    // Number of coefficients per graded block: an N-vector (classical) or a scalar (quantum).
    int block_size() const { return backend == Backend::classical ? rank : 1; }
    // Length of algebra monomial keys: m (classical) or (m, n) (quantum).
    int key_size() const { return backend == Backend::classical ? rank : 2 * rank; }
    LatticeVector key_m(const LatticeVector& key) const
    {
        return backend == Backend::classical ? key : key.slice(0, rank);
    }
    bool same_as(const LieContext& o) const;
};

using ContextPtr = std::shared_ptr<const LieContext>;

// Classical: the N-vector N of z^m d_N. Quantum: the single coefficient of zhat^m.
using Block = std::vector<Coefficient>;

class LieElement {
public:
    LieElement() = default;
    LieElement(ContextPtr ctx, int order);

    // c z^m d_n
    static LieElement term(ContextPtr ctx, int order, const LatticeVector& m, const LatticeVector& n,
                           const Coefficient& c);
    // c zhat^m
    static LieElement qterm(ContextPtr ctx, int order, const LatticeVector& m, const Coefficient& c);

    const ContextPtr& ctx() const { return ctx_; }
    int order() const { return order_; }
    const std::map<LatticeVector, Block>& blocks() const { return blocks_; }
    bool is_zero() const { return blocks_.empty(); }
    std::int64_t min_degree() const;
    std::int64_t max_degree() const;

    void add_block(const LatticeVector& m, const Block& b);
    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement operator-() const;
    LieElement operator*(const Coefficient& c) const;
    LieElement operator*(const Rational& s) const;
    LieElement& operator+=(const LieElement& o);

    LieElement truncated(int k) const;
    // Same blocks viewed at another truncation order (blocks of degree >= k are dropped).
    LieElement with_order(int k) const;
    LieElement homogeneous_degree(std::int64_t d) const;
    LieElement block_at(const LatticeVector& m) const;

    bool operator==(const LieElement& o) const;
    std::string str() const;

private:
    void check_compatible(const LieElement& o) const;
    ContextPtr ctx_;
    int order_ = 1;
    std::map<LatticeVector, Block> blocks_;
};

LieElement bracket(const LieElement& x, const LieElement& y);

// Common n-line (primitive, first nonzero coordinate positive) of each graded block,
// or nullopt when the block mixes non-proportional n.
std::map<LatticeVector, std::optional<LatticeVector>> tropical_membership(const LieElement& g);

// For a classical block N proportional to an integer vector, returns (primitive n, c) with N = c n.
std::optional<std::pair<LatticeVector, Coefficient>> split_block(const Block& b);

// Truncated element of the algebra A (classical, keys m) or B (quantum, keys (m, n)).
// Terms are kept while degree(m-part) - floor < order.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(ContextPtr ctx, int order, std::int64_t floor);
    static AlgebraElement monomial(ContextPtr ctx, int order, const LatticeVector& key,
                                   const Coefficient& c = Coefficient(1));

    const ContextPtr& ctx() const { return ctx_; }
    int order() const { return order_; }
    std::int64_t floor() const { return floor_; }
    const std::map<LatticeVector, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coefficient coeff(const LatticeVector& key) const;

    void add_term(const LatticeVector& key, const Coefficient& c);
    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const Rational& s) const;
    AlgebraElement operator*(const Coefficient& c) const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    // Algebra product (commutative for A, v-twisted for B).
    AlgebraElement product(const AlgebraElement& o) const;
    AlgebraElement truncated(int k) const;

    bool operator==(const AlgebraElement& o) const;
    std::string str() const;

private:
    ContextPtr ctx_;
    int order_ = 1;
    std::int64_t floor_ = 0;
    std::map<LatticeVector, Coefficient> terms_;
};

// Derivation action of the Lie algebra on A or B.
AlgebraElement act(const LieElement& g, const AlgebraElement& a);

} // namespace scatter
