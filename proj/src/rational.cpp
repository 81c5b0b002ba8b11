#include "scatter/rational.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace scatter {

Rational frac(long p, long q)
{
    if (q == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s)
{
    if (s.empty()) {
        throw std::invalid_argument("empty rational");
    }
    std::string t = s;
    if (t.front() == '+') {
        t.erase(0, 1);
    }
    auto slash = t.find('/');
    auto digits_ok = [](const std::string& x, bool allow_sign) {
        if (x.empty()) {
            return false;
        }
        std::size_t i = 0;
        if (allow_sign && x[0] == '-') {
            i = 1;
        }
        if (i == x.size()) {
            return false;
        }
        for (; i < x.size(); ++i) {
            if (x[i] < '0' || x[i] > '9') {
                return false;
            }
        }
        return true;
    };
    std::string num = slash == std::string::npos ? t : t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
    Integer d(den);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

int sign(const Rational& q)
{
    return sgn(q);
}

int sign(std::int64_t x)
{
    return (x > 0) - (x < 0);
}

Rational factorial(int n)
{
    Integer r = 1;
    for (int i = 2; i <= n; ++i) {
        r *= i;
    }
    return Rational(r);
}

Rational bernoulli(int n)
{
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        // sum_{j<m} C(m+1,j) B_j = -(m+1) B_m
        Rational acc = 0;
        Integer binom = 1;
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        Rational b = -acc / Rational(m + 1);
        cache.push_back(b);
    }
    return cache[n];
}

} // namespace scatter
