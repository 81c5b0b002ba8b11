#pragma once

#include "scatter/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace scatter {

// Laurent polynomial in v = q^{1/2} with rational coefficients.
class LaurentV {
public:
    using Term = std::pair<int, Rational>;

    LaurentV() = default;
    LaurentV(const Rational& c); // NOLINT: constant polynomial
    static LaurentV monomial(int exp, const Rational& c = 1);

    bool is_zero() const { return t_.empty(); }
    const std::vector<Term>& terms() const { return t_; }
    Rational coeff(int exp) const;
    int min_exp() const { return t_.front().first; }
    int max_exp() const { return t_.back().first; }

    LaurentV operator+(const LaurentV& o) const;
    LaurentV operator-(const LaurentV& o) const;
    LaurentV operator-() const;
    LaurentV operator*(const LaurentV& o) const;
    LaurentV operator*(const Rational& s) const;
    LaurentV& operator+=(const LaurentV& o);
    LaurentV shifted(int k) const; // times v^k
    LaurentV bar() const;          // v -> v^{-1}

    // Exact division by a polynomial; returns false when the remainder is nonzero.
    bool try_divide(const LaurentV& d, LaurentV& quotient) const;

    bool operator==(const LaurentV& o) const = default;
    auto operator<=>(const LaurentV& o) const = default;
    std::string str() const;

private:
    void normalize();
    std::vector<Term> t_;
};

// (v^n - v^-n)/(v - v^-1)
LaurentV quantum_integer(int n);
// v^n - v^-n
LaurentV v_difference(int n);
// Cyclotomic polynomial Phi_d(v).
const LaurentV& cyclotomic(int d);

// Laurent polynomial divided by a product of cyclotomic polynomials in v.
// Kept reduced, so equality is structural.
class VFrac {
public:
    using Den = std::vector<std::pair<int, int>>; // (d, power), sorted by d

    VFrac() = default;
    VFrac(const LaurentV& num) : num_(num) {} // NOLINT
    VFrac(const Rational& c) : num_(c) {}      // NOLINT
    VFrac(LaurentV num, Den den);

    const LaurentV& num() const { return num_; }
    const Den& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.empty(); }

    VFrac operator+(const VFrac& o) const;
    VFrac operator-(const VFrac& o) const;
    VFrac operator-() const;
    VFrac operator*(const VFrac& o) const;
    VFrac operator*(const Rational& s) const;
    VFrac& operator+=(const VFrac& o);
    VFrac shifted(int k) const;
    // Divide by v^n - v^-n, n != 0.
    VFrac div_v_difference(int n) const;

    bool operator==(const VFrac& o) const = default;
    auto operator<=>(const VFrac& o) const = default;
    std::string str() const;

private:
    void reduce();
    LaurentV num_;
    Den den_;
};

// Monomial in t_i (exponent capped by the ring) and u_ij (square zero).
// Variables are keyed by (i, j) with j = 0 meaning t_i.
class NilpotentMonomial {
public:
    struct Var {
        int i = 0;
        int j = 0;
        auto operator<=>(const Var&) const = default;
        bool operator==(const Var&) const = default;
        bool is_t() const { return j == 0; }
    };
    using Entry = std::pair<Var, int>;

    NilpotentMonomial() = default;
    static NilpotentMonomial t(int i, int e = 1);
    static NilpotentMonomial u(int i, int j);
    static NilpotentMonomial zero_monomial();

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && e_.empty(); }
    const std::vector<Entry>& entries() const { return e_; }
    int exponent(Var v) const;
    bool has_t() const;

    // tcap = 0 means t exponents are unbounded.
    NilpotentMonomial mul(const NilpotentMonomial& o, int tcap) const;
    NilpotentMonomial without(Var v) const;

    auto operator<=>(const NilpotentMonomial& o) const = default;
    bool operator==(const NilpotentMonomial& o) const = default;
    std::string str() const;

private:
    bool zero_ = false;
    std::vector<Entry> e_;
};

// Element of (Q(v) restricted as above)[t, u] / nilpotency relations.
class Coefficient {
public:
    using Term = std::pair<NilpotentMonomial, VFrac>;

    Coefficient() = default;
    Coefficient(const Rational& c);          // NOLINT
    Coefficient(long c) : Coefficient(Rational(c)) {} // NOLINT
    Coefficient(int c) : Coefficient(Rational(c)) {}  // NOLINT
    Coefficient(const VFrac& c);             // NOLINT
    Coefficient(const LaurentV& c) : Coefficient(VFrac(c)) {} // NOLINT
    static Coefficient monomial(const NilpotentMonomial& m, const VFrac& c = VFrac(Rational(1)),
                                int tcap = 0);

    bool is_zero() const { return t_.empty(); }
    const std::vector<Term>& terms() const { return t_; }
    int tcap() const { return tcap_; }
    void set_tcap(int l);
    VFrac coeff(const NilpotentMonomial& m) const;
    // Scalar rational when the element is c * 1 with c rational.
    bool is_rational() const;
    Rational rational_value() const;

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator-() const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient operator*(const Rational& s) const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    Coefficient shifted(int k) const;
    Coefficient mul_vfrac(const VFrac& f) const;

    bool operator==(const Coefficient& o) const { return t_ == o.t_; }
    bool operator<(const Coefficient& o) const { return t_ < o.t_; }
    std::string str() const;

private:
    void normalize();
    std::vector<Term> t_;
    int tcap_ = 0;
};

// t_i -> sum_{j=1..l} u_ij
Coefficient perturbation_substitute(const Coefficient& c, int l);

} // namespace scatter
