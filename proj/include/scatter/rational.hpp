#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace scatter {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical p/q; mpq_class(p, q) alone does not reduce.
Rational frac(long p, long q);

// "p/q" with q omitted when it is 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

int sign(const Rational& q);
int sign(std::int64_t x);

Rational factorial(int n);
Rational bernoulli(int n);

} // namespace scatter
