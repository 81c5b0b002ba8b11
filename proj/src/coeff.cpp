#include "scatter/coeff.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace scatter {

// ---------------------------------------------------------------- LaurentV

LaurentV::LaurentV(const Rational& c)
{
    if (c != 0) {
        t_.emplace_back(0, c);
    }
}

LaurentV LaurentV::monomial(int exp, const Rational& c)
{
    LaurentV r;
    if (c != 0) {
        r.t_.emplace_back(exp, c);
    }
    return r;
}

void LaurentV::normalize()
{
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    t_ = std::move(out);
}

Rational LaurentV::coeff(int exp) const
{
    auto it = std::lower_bound(t_.begin(), t_.end(), exp,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != t_.end() && it->first == exp) {
        return it->second;
    }
    return 0;
}

LaurentV LaurentV::operator+(const LaurentV& o) const
{
    LaurentV r;
    r.t_.reserve(t_.size() + o.t_.size());
    auto a = t_.begin(), b = o.t_.begin();
    while (a != t_.end() || b != o.t_.end()) {
        if (b == o.t_.end() || (a != t_.end() && a->first < b->first)) {
            r.t_.push_back(*a++);
        } else if (a == t_.end() || b->first < a->first) {
            r.t_.push_back(*b++);
        } else {
            Rational s = a->second + b->second;
            if (s != 0) {
                r.t_.emplace_back(a->first, std::move(s));
            }
            ++a;
            ++b;
        }
    }
    return r;
}

LaurentV& LaurentV::operator+=(const LaurentV& o)
{
    *this = *this + o;
    return *this;
}

LaurentV LaurentV::operator-() const
{
    LaurentV r = *this;
    for (auto& t : r.t_) {
        t.second = -t.second;
    }
    return r;
}

LaurentV LaurentV::operator-(const LaurentV& o) const
{
    return *this + (-o);
}

LaurentV LaurentV::operator*(const Rational& s) const
{
    if (s == 0) {
        return {};
    }
    LaurentV r = *this;
    for (auto& t : r.t_) {
        t.second *= s;
    }
    return r;
}

LaurentV LaurentV::operator*(const LaurentV& o) const
{
    if (is_zero() || o.is_zero()) {
        return {};
    }
    if (t_.size() == 1) {
        LaurentV r = o.shifted(t_[0].first);
        return r * t_[0].second;
    }
    if (o.t_.size() == 1) {
        LaurentV r = shifted(o.t_[0].first);
        return r * o.t_[0].second;
    }
    int lo = min_exp() + o.min_exp();
    int hi = max_exp() + o.max_exp();
    std::vector<Rational> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& a : t_) {
        for (const auto& b : o.t_) {
            acc[static_cast<std::size_t>(a.first + b.first - lo)] += a.second * b.second;
        }
    }
    LaurentV r;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] != 0) {
            r.t_.emplace_back(lo + static_cast<int>(i), std::move(acc[i]));
        }
    }
    return r;
}

LaurentV LaurentV::shifted(int k) const
{
    LaurentV r = *this;
    for (auto& t : r.t_) {
        t.first += k;
    }
    return r;
}

LaurentV LaurentV::bar() const
{
    LaurentV r;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        r.t_.emplace_back(-it->first, it->second);
    }
    return r;
}

bool LaurentV::try_divide(const LaurentV& d, LaurentV& quotient) const
{
    if (d.is_zero()) {
        throw std::domain_error("division by zero Laurent polynomial");
    }
    if (is_zero()) {
        quotient = {};
        return true;
    }
    int shift = min_exp() - d.min_exp();
    int n_deg = max_exp() - min_exp();
    int d_deg = d.max_exp() - d.min_exp();
    if (n_deg < d_deg) {
        return false;
    }
    std::vector<Rational> num(static_cast<std::size_t>(n_deg + 1));
    for (const auto& t : t_) {
        num[static_cast<std::size_t>(t.first - min_exp())] = t.second;
    }
    std::vector<Rational> den(static_cast<std::size_t>(d_deg + 1));
    for (const auto& t : d.t_) {
        den[static_cast<std::size_t>(t.first - d.min_exp())] = t.second;
    }
    std::vector<Rational> q(static_cast<std::size_t>(n_deg - d_deg + 1));
    const Rational& lead = den.back();
    for (int i = n_deg - d_deg; i >= 0; --i) {
        Rational c = num[static_cast<std::size_t>(i + d_deg)] / lead;
        q[static_cast<std::size_t>(i)] = c;
        if (c != 0) {
            for (int j = 0; j <= d_deg; ++j) {
                num[static_cast<std::size_t>(i + j)] -= c * den[static_cast<std::size_t>(j)];
            }
        }
    }
    for (int i = 0; i < d_deg; ++i) {
        if (num[static_cast<std::size_t>(i)] != 0) {
            return false;
        }
    }
    LaurentV r;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] != 0) {
            r.t_.emplace_back(static_cast<int>(i) + shift, q[i]);
        }
    }
    quotient = std::move(r);
    return true;
}

std::string LaurentV::str() const
{
    if (t_.empty()) {
        return "0";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (i) {
            os << " + ";
        }
        os << to_string(t_[i].second);
        if (t_[i].first != 0) {
            os << "*v^" << t_[i].first;
        }
    }
    return os.str();
}

LaurentV quantum_integer(int n)
{
    if (n == 0) {
        return {};
    }
    if (n < 0) {
        return -quantum_integer(-n);
    }
    LaurentV r;
    for (int k = -(n - 1); k <= n - 1; k += 2) {
        r += LaurentV::monomial(k);
    }
    return r;
}

LaurentV v_difference(int n)
{
    return LaurentV::monomial(n) - LaurentV::monomial(-n);
}

namespace {

constexpr int kCyclotomicLimit = 256;

std::vector<LaurentV> build_cyclotomic()
{
    std::vector<LaurentV> phi(kCyclotomicLimit + 1);
    for (int d = 1; d <= kCyclotomicLimit; ++d) {
        LaurentV p = LaurentV::monomial(d) - LaurentV(Rational(1));
        for (int e = 1; e < d; ++e) {
            if (d % e == 0) {
                LaurentV q;
                if (!p.try_divide(phi[e], q)) {
                    throw std::logic_error("cyclotomic construction failed");
                }
                p = q;
            }
        }
        phi[d] = p;
    }
    return phi;
}

} // namespace

const LaurentV& cyclotomic(int d)
{
    static const std::vector<LaurentV> table = build_cyclotomic();
    if (d < 1 || d > kCyclotomicLimit) {
        throw std::out_of_range("cyclotomic index out of supported range");
    }
    return table[static_cast<std::size_t>(d)];
}

// ---------------------------------------------------------------- VFrac

VFrac::VFrac(LaurentV num, Den den) : num_(std::move(num)), den_(std::move(den))
{
    std::sort(den_.begin(), den_.end());
    reduce();
}

void VFrac::reduce()
{
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [d, p] : den_) {
        const LaurentV& phi = cyclotomic(d);
        while (p > 0) {
            LaurentV q;
            if (!num_.try_divide(phi, q)) {
                break;
            }
            num_ = std::move(q);
            --p;
        }
    }
    std::erase_if(den_, [](const auto& e) { return e.second == 0; });
}

static LaurentV cyclotomic_power_product(const VFrac::Den& factors)
{
    LaurentV r(Rational(1));
    for (const auto& [d, p] : factors) {
        for (int i = 0; i < p; ++i) {
            r = r * cyclotomic(d);
        }
    }
    return r;
}

VFrac VFrac::operator+(const VFrac& o) const
{
    if (is_zero()) {
        return o;
    }
    if (o.is_zero()) {
        return *this;
    }
    if (den_.empty() && o.den_.empty()) {
        return VFrac(num_ + o.num_);
    }
    if (den_ == o.den_) {
        VFrac r;
        r.num_ = num_ + o.num_;
        r.den_ = den_;
        r.reduce();
        return r;
    }
    std::map<int, int> common;
    for (const auto& [d, p] : den_) {
        common[d] = std::max(common[d], p);
    }
    for (const auto& [d, p] : o.den_) {
        common[d] = std::max(common[d], p);
    }
    auto missing = [&](const Den& own) {
        std::map<int, int> have(own.begin(), own.end());
        Den m;
        for (const auto& [d, p] : common) {
            int k = p - (have.count(d) ? have[d] : 0);
            if (k > 0) {
                m.emplace_back(d, k);
            }
        }
        return m;
    };
    VFrac r;
    r.num_ = num_ * cyclotomic_power_product(missing(den_)) +
             o.num_ * cyclotomic_power_product(missing(o.den_));
    r.den_.assign(common.begin(), common.end());
    r.reduce();
    return r;
}

VFrac& VFrac::operator+=(const VFrac& o)
{
    *this = *this + o;
    return *this;
}

VFrac VFrac::operator-() const
{
    VFrac r = *this;
    r.num_ = -r.num_;
    return r;
}

VFrac VFrac::operator-(const VFrac& o) const
{
    return *this + (-o);
}

VFrac VFrac::operator*(const VFrac& o) const
{
    if (is_zero() || o.is_zero()) {
        return {};
    }
    if (den_.empty() && o.den_.empty()) {
        return VFrac(num_ * o.num_);
    }
    std::map<int, int> pw;
    for (const auto& [d, p] : den_) {
        pw[d] += p;
    }
    for (const auto& [d, p] : o.den_) {
        pw[d] += p;
    }
    VFrac r;
    r.num_ = num_ * o.num_;
    r.den_.assign(pw.begin(), pw.end());
    r.reduce();
    return r;
}

VFrac VFrac::operator*(const Rational& s) const
{
    if (s == 0) {
        return {};
    }
    VFrac r = *this;
    r.num_ = r.num_ * s;
    return r;
}

VFrac VFrac::shifted(int k) const
{
    VFrac r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
}

VFrac VFrac::div_v_difference(int n) const
{
    if (n == 0) {
        throw std::domain_error("division by v^0 - v^0");
    }
    if (n < 0) {
        return -div_v_difference(-n);
    }
    // v^n - v^-n = v^-n * prod_{d | 2n} Phi_d(v)
    std::map<int, int> pw(den_.begin(), den_.end());
    for (int d = 1; d <= 2 * n; ++d) {
        if ((2 * n) % d == 0) {
            pw[d] += 1;
        }
    }
    VFrac r;
    r.num_ = num_.shifted(n);
    r.den_.assign(pw.begin(), pw.end());
    r.reduce();
    return r;
}

std::string VFrac::str() const
{
    if (den_.empty()) {
        return num_.str();
    }
    std::ostringstream os;
    os << "(" << num_.str() << ")/(";
    for (std::size_t i = 0; i < den_.size(); ++i) {
        if (i) {
            os << "*";
        }
        os << "Phi" << den_[i].first;
        if (den_[i].second > 1) {
            os << "^" << den_[i].second;
        }
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- NilpotentMonomial

NilpotentMonomial NilpotentMonomial::t(int i, int e)
{
    NilpotentMonomial m;
    if (e > 0) {
        m.e_.push_back({Var{i, 0}, e});
    }
    return m;
}

NilpotentMonomial NilpotentMonomial::u(int i, int j)
{
    if (j < 1) {
        throw std::invalid_argument("u variables are indexed from 1");
    }
    NilpotentMonomial m;
    m.e_.push_back({Var{i, j}, 1});
    return m;
}

NilpotentMonomial NilpotentMonomial::zero_monomial()
{
    NilpotentMonomial m;
    m.zero_ = true;
    return m;
}

int NilpotentMonomial::exponent(Var v) const
{
    for (const auto& [var, e] : e_) {
        if (var == v) {
            return e;
        }
    }
    return 0;
}

bool NilpotentMonomial::has_t() const
{
    for (const auto& [var, e] : e_) {
        if (var.is_t()) {
            return true;
        }
    }
    return false;
}

NilpotentMonomial NilpotentMonomial::mul(const NilpotentMonomial& o, int tcap) const
{
    if (zero_ || o.zero_) {
        return zero_monomial();
    }
    NilpotentMonomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
        if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
            r.e_.push_back(*a++);
        } else if (a == e_.end() || b->first < a->first) {
            r.e_.push_back(*b++);
        } else {
            int e = a->second + b->second;
            bool dead = a->first.is_t() ? (tcap > 0 && e > tcap) : e > 1;
            if (dead) {
                return zero_monomial();
            }
            r.e_.push_back({a->first, e});
            ++a;
            ++b;
        }
    }
    if (tcap > 0) {
        for (const auto& [var, e] : r.e_) {
            if (var.is_t() && e > tcap) {
                return zero_monomial();
            }
        }
    }
    return r;
}

NilpotentMonomial NilpotentMonomial::without(Var v) const
{
    NilpotentMonomial r = *this;
    std::erase_if(r.e_, [&](const Entry& x) { return x.first == v; });
    return r;
}

std::string NilpotentMonomial::str() const
{
    if (zero_) {
        return "0";
    }
    if (e_.empty()) {
        return "1";
    }
    std::ostringstream os;
    for (std::size_t k = 0; k < e_.size(); ++k) {
        if (k) {
            os << "*";
        }
        const auto& [var, e] = e_[k];
        if (var.is_t()) {
            os << "t" << var.i;
        } else {
            os << "u" << var.i << "_" << var.j;
        }
        if (e > 1) {
            os << "^" << e;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- Coefficient

Coefficient::Coefficient(const Rational& c)
{
    if (c != 0) {
        t_.emplace_back(NilpotentMonomial(), VFrac(c));
    }
}

Coefficient::Coefficient(const VFrac& c)
{
    if (!c.is_zero()) {
        t_.emplace_back(NilpotentMonomial(), c);
    }
}

Coefficient Coefficient::monomial(const NilpotentMonomial& m, const VFrac& c, int tcap)
{
    Coefficient r;
    r.tcap_ = tcap;
    if (!m.is_zero() && !c.is_zero()) {
        r.t_.emplace_back(m, c);
    }
    r.set_tcap(tcap);
    return r;
}

void Coefficient::set_tcap(int l)
{
    tcap_ = l;
    if (l > 0) {
        std::erase_if(t_, [l](const Term& t) {
            for (const auto& [var, e] : t.first.entries()) {
                if (var.is_t() && e > l) {
                    return true;
                }
            }
            return false;
        });
    }
}

void Coefficient::normalize()
{
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term& t) { return t.second.is_zero() || t.first.is_zero(); });
    t_ = std::move(out);
}

static int combine_cap(int a, int b)
{
    if (a == 0) {
        return b;
    }
    if (b == 0) {
        return a;
    }
    return std::min(a, b);
}

VFrac Coefficient::coeff(const NilpotentMonomial& m) const
{
    for (const auto& [mono, c] : t_) {
        if (mono == m) {
            return c;
        }
    }
    return {};
}

bool Coefficient::is_rational() const
{
    if (t_.empty()) {
        return true;
    }
    if (t_.size() != 1 || !t_[0].first.is_one()) {
        return false;
    }
    const VFrac& f = t_[0].second;
    return f.is_laurent() && f.num().terms().size() == 1 && f.num().terms()[0].first == 0;
}

Rational Coefficient::rational_value() const
{
    if (!is_rational()) {
        throw std::domain_error("coefficient is not a rational scalar: " + str());
    }
    if (t_.empty()) {
        return 0;
    }
    return t_[0].second.num().terms()[0].second;
}

Coefficient Coefficient::operator+(const Coefficient& o) const
{
    Coefficient r;
    r.tcap_ = combine_cap(tcap_, o.tcap_);
    r.t_.reserve(t_.size() + o.t_.size());
    auto a = t_.begin(), b = o.t_.begin();
    while (a != t_.end() || b != o.t_.end()) {
        if (b == o.t_.end() || (a != t_.end() && a->first < b->first)) {
            r.t_.push_back(*a++);
        } else if (a == t_.end() || b->first < a->first) {
            r.t_.push_back(*b++);
        } else {
            VFrac s = a->second + b->second;
            if (!s.is_zero()) {
                r.t_.emplace_back(a->first, std::move(s));
            }
            ++a;
            ++b;
        }
    }
    if (r.tcap_ != tcap_ || r.tcap_ != o.tcap_) {
        r.set_tcap(r.tcap_);
    }
    return r;
}

Coefficient& Coefficient::operator+=(const Coefficient& o)
{
    *this = *this + o;
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o)
{
    *this = *this + (-o);
    return *this;
}

Coefficient Coefficient::operator-() const
{
    Coefficient r = *this;
    for (auto& t : r.t_) {
        t.second = -t.second;
    }
    return r;
}

Coefficient Coefficient::operator-(const Coefficient& o) const
{
    return *this + (-o);
}

Coefficient Coefficient::operator*(const Coefficient& o) const
{
    Coefficient r;
    r.tcap_ = combine_cap(tcap_, o.tcap_);
    if (t_.empty() || o.t_.empty()) {
        return r;
    }
    if (t_.size() == 1 && t_[0].first.is_one()) {
        r.t_ = o.t_;
        for (auto& t : r.t_) {
            t.second = t.second * t_[0].second;
        }
        r.normalize();
        r.set_tcap(r.tcap_);
        return r;
    }
    if (o.t_.size() == 1 && o.t_[0].first.is_one()) {
        r.t_ = t_;
        for (auto& t : r.t_) {
            t.second = t.second * o.t_[0].second;
        }
        r.normalize();
        r.set_tcap(r.tcap_);
        return r;
    }
    r.t_.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_) {
        for (const auto& b : o.t_) {
            NilpotentMonomial m = a.first.mul(b.first, r.tcap_);
            if (m.is_zero()) {
                continue;
            }
            r.t_.emplace_back(std::move(m), a.second * b.second);
        }
    }
    r.normalize();
    return r;
}

Coefficient Coefficient::operator*(const Rational& s) const
{
    if (s == 0) {
        Coefficient r;
        r.tcap_ = tcap_;
        return r;
    }
    Coefficient r = *this;
    for (auto& t : r.t_) {
        t.second = t.second * s;
    }
    return r;
}

Coefficient Coefficient::mul_vfrac(const VFrac& f) const
{
    Coefficient r = *this;
    for (auto& t : r.t_) {
        t.second = t.second * f;
    }
    r.normalize();
    return r;
}

Coefficient Coefficient::shifted(int k) const
{
    Coefficient r = *this;
    for (auto& t : r.t_) {
        t.second = t.second.shifted(k);
    }
    return r;
}

std::string Coefficient::str() const
{
    if (t_.empty()) {
        return "0";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (i) {
            os << " + ";
        }
        os << "[" << t_[i].second.str() << "]";
        if (!t_[i].first.is_one()) {
            os << "*" << t_[i].first.str();
        }
    }
    return os.str();
}

// Image of t_i^e: e! * sum over e-subsets J of {1..l} of prod_{s in J} u_is.
static Coefficient substitute_power(int i, int e, int l)
{
    Coefficient acc;
    if (e > l) {
        return acc;
    }
    std::vector<int> pick(static_cast<std::size_t>(e));
    for (int k = 0; k < e; ++k) {
        pick[static_cast<std::size_t>(k)] = k + 1;
    }
    Rational fact = factorial(e);
    while (true) {
        NilpotentMonomial m;
        for (int s : pick) {
            m = m.mul(NilpotentMonomial::u(i, s), 0);
        }
        acc += Coefficient::monomial(m, VFrac(fact));
        int k = e - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == l - (e - 1 - k)) {
            --k;
        }
        if (k < 0) {
            break;
        }
        ++pick[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < e; ++j) {
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return acc;
}

Coefficient perturbation_substitute(const Coefficient& c, int l)
{
    Coefficient out;
    for (const auto& [mono, val] : c.terms()) {
        Coefficient term(val);
        NilpotentMonomial rest;
        for (const auto& [var, e] : mono.entries()) {
            if (var.is_t()) {
                term = term * substitute_power(var.i, e, l);
            } else {
                rest = rest.mul(NilpotentMonomial::u(var.i, var.j), 0);
            }
        }
        term = term * Coefficient::monomial(rest);
        out += term;
    }
    return out;
}

} // namespace scatter
