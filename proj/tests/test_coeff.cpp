#include "scatter/coeff.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scatter;

namespace {

LaurentV v(int e, long c = 1)
{
    return LaurentV::monomial(e, Rational(c));
}

Coefficient t(int i, int e = 1)
{
    return Coefficient::monomial(NilpotentMonomial::t(i, e));
}

Coefficient u(int i, int j)
{
    return Coefficient::monomial(NilpotentMonomial::u(i, j));
}

} // namespace

TEST(Coeff, QuantumInteger)
{
    EXPECT_EQ(quantum_integer(0), LaurentV());
    EXPECT_EQ(quantum_integer(1), LaurentV(1));
    EXPECT_EQ(quantum_integer(2), v(1) + v(-1));
    EXPECT_EQ(quantum_integer(3), v(2) + v(0) + v(-2));
    // Independent oracle: multiply back by v - v^{-1}.
    for (int n = -7; n <= 7; ++n) {
        EXPECT_EQ(quantum_integer(n) * (v(1) - v(-1)), v(n) - v(-n));
        EXPECT_EQ(quantum_integer(-n), -quantum_integer(n));
        EXPECT_EQ(quantum_integer(n).bar(), quantum_integer(n));
    }
}

TEST(Coeff, Cyclotomic)
{
    // Phi_1 = v - 1, Phi_2 = v + 1, Phi_4 = v^2 + 1, Phi_6 = v^2 - v + 1
    EXPECT_EQ(cyclotomic(1), v(1) - v(0));
    EXPECT_EQ(cyclotomic(2), v(1) + v(0));
    EXPECT_EQ(cyclotomic(4), v(2) + v(0));
    EXPECT_EQ(cyclotomic(6), v(2) - v(1) + v(0));
    for (int n = 1; n <= 24; ++n) {
        LaurentV prod(1);
        for (int d = 1; d <= n; ++d) {
            if (n % d == 0) {
                prod = prod * cyclotomic(d);
            }
        }
        EXPECT_EQ(prod, v(n) - v(0));
    }
}

TEST(Coeff, VFracReduction)
{
    VFrac a = VFrac(LaurentV(1)).div_v_difference(2);
    // (v^2 - v^-2) * a == 1
    EXPECT_EQ(a * VFrac(v_difference(2)), VFrac(LaurentV(1)));
    // 1/(v - v^-1) + 1/(v - v^-1) = 2/(v - v^-1)
    VFrac b = VFrac(LaurentV(1)).div_v_difference(1);
    EXPECT_EQ(b + b, b * Rational(2));
    // (v + v^-1)/(v^2 - v^-2) = 1/(v - v^-1)
    EXPECT_EQ(VFrac(v(1) + v(-1)).div_v_difference(2), b);
    EXPECT_TRUE((b - b).is_zero());
}

TEST(Coeff, PerturbationSubstitute)
{
    EXPECT_EQ(perturbation_substitute(t(1), 2), u(1, 1) + u(1, 2));
    EXPECT_EQ(perturbation_substitute(t(1, 2), 2), u(1, 1) * u(1, 2) * Rational(2));
    EXPECT_TRUE(perturbation_substitute(t(1, 3), 2).is_zero());
}

TEST(Coeff, RingOps)
{
    EXPECT_EQ(Coefficient(v(1)) * Coefficient(v(-1)), Coefficient(1));
    EXPECT_TRUE((u(1, 1) * u(1, 1)).is_zero());
    Coefficient one = Coefficient(1);
    Coefficient a = one + t(1);
    a.set_tcap(1);
    Coefficient b = one - t(1);
    b.set_tcap(1);
    EXPECT_EQ(a * b, one);
}

namespace {

struct RandomCoeff {
    std::mt19937_64 rng;
    explicit RandomCoeff(unsigned seed) : rng(seed) {}
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Coefficient t_poly()
    {
        Coefficient c;
        for (int k = pick(1, 3); k > 0; --k) {
            Coefficient m = Coefficient::monomial(NilpotentMonomial::t(pick(1, 2), pick(1, 2)),
                                                  VFrac(v(pick(-2, 2), pick(-3, 3))));
            c += m;
        }
        return c;
    }
    Coefficient u_poly()
    {
        Coefficient c;
        for (int k = pick(1, 4); k > 0; --k) {
            Coefficient m = Coefficient::monomial(NilpotentMonomial::u(pick(1, 2), pick(1, 2)),
                                                  VFrac(v(pick(-2, 2), pick(-3, 3))));
            if (pick(0, 1)) {
                m = m * u(pick(1, 2), pick(1, 2));
            }
            c += m;
        }
        return c;
    }
};

} // namespace

TEST(CoeffProperty, SubstituteIsHomomorphism)
{
    RandomCoeff g(3);
    for (int trial = 0; trial < 200; ++trial) {
        Coefficient a = g.t_poly(), b = g.t_poly();
        EXPECT_EQ(perturbation_substitute(a * b, 2),
                  perturbation_substitute(a, 2) * perturbation_substitute(b, 2));
        EXPECT_EQ(perturbation_substitute(a + b, 2),
                  perturbation_substitute(a, 2) + perturbation_substitute(b, 2));
    }
}

TEST(CoeffProperty, AssociativeCommutative)
{
    RandomCoeff g(4);
    for (int trial = 0; trial < 200; ++trial) {
        Coefficient a = g.u_poly(), b = g.u_poly(), c = g.u_poly();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}
