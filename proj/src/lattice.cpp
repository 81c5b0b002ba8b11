#include "scatter/lattice.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scatter {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("lattice coordinate overflow");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("lattice coordinate overflow");
    }
    return r;
}

static void require_same_rank(const LatticeVector& a, const LatticeVector& b)
{
    if (a.rank() != b.rank()) {
        throw std::invalid_argument("rank mismatch: " + std::to_string(a.rank()) + " vs " +
                                    std::to_string(b.rank()));
    }
}

bool LatticeVector::is_zero() const
{
    for (auto x : c_) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

std::int64_t LatticeVector::content() const
{
    std::int64_t g = 0;
    for (auto x : c_) {
        g = std::gcd(g, x < 0 ? -x : x);
    }
    return g;
}

LatticeVector LatticeVector::primitive() const
{
    auto g = content();
    if (g == 0) {
        throw std::invalid_argument("primitive() of the zero vector");
    }
    LatticeVector r = *this;
    for (auto& x : r.c_) {
        x /= g;
    }
    return r;
}

int LatticeVector::lex_sign() const
{
    for (auto x : c_) {
        if (x != 0) {
            return x > 0 ? 1 : -1;
        }
    }
    return 0;
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const
{
    require_same_rank(*this, o);
    LatticeVector r = *this;
    for (int i = 0; i < rank(); ++i) {
        r[i] = checked_add(r[i], o[i]);
    }
    return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o)
{
    require_same_rank(*this, o);
    for (int i = 0; i < rank(); ++i) {
        (*this)[i] = checked_add((*this)[i], o[i]);
    }
    return *this;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const
{
    return *this + (-o);
}

LatticeVector LatticeVector::operator-() const
{
    LatticeVector r = *this;
    for (auto& x : r.c_) {
        x = checked_mul(x, -1);
    }
    return r;
}

LatticeVector LatticeVector::operator*(std::int64_t k) const
{
    LatticeVector r = *this;
    for (auto& x : r.c_) {
        x = checked_mul(x, k);
    }
    return r;
}

LatticeVector LatticeVector::concat(const LatticeVector& o) const
{
    LatticeVector r = *this;
    r.c_.insert(r.c_.end(), o.c_.begin(), o.c_.end());
    return r;
}

LatticeVector LatticeVector::slice(int from, int len) const
{
    LatticeVector r;
    r.c_.assign(c_.begin() + from, c_.begin() + from + len);
    return r;
}

std::string LatticeVector::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << c_[i];
    }
    os << ')';
    return os.str();
}

std::int64_t pairing(const LatticeVector& m, const LatticeVector& n)
{
    require_same_rank(m, n);
    std::int64_t s = 0;
    for (int i = 0; i < m.rank(); ++i) {
        s = checked_add(s, checked_mul(m[i], n[i]));
    }
    return s;
}

bool parallel(const LatticeVector& a, const LatticeVector& b)
{
    require_same_rank(a, b);
    for (int i = 0; i < a.rank(); ++i) {
        for (int j = i + 1; j < a.rank(); ++j) {
            if (checked_mul(a[i], b[j]) != checked_mul(a[j], b[i])) {
                return false;
            }
        }
    }
    return true;
}

ConeData ConeData::standard(int rank)
{
    ConeData c;
    for (int i = 0; i < rank; ++i) {
        LatticeVector e(rank);
        e[i] = 1;
        c.generators.push_back(e);
    }
    return c;
}

bool ConeData::contains(const LatticeVector& m) const
{
    // Only simplicial cones given by a lattice basis are needed; solve in that basis.
    int r = m.rank();
    if (static_cast<int>(generators.size()) != r) {
        throw std::invalid_argument("cone membership needs a simplicial cone of full rank");
    }
    // Gaussian elimination over the rationals.
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r + 1));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            a[i][j] = Rational(static_cast<long>(generators[j][i]));
        }
        a[i][r] = Rational(static_cast<long>(m[i]));
    }
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i) {
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            throw std::invalid_argument("cone generators are linearly dependent");
        }
        std::swap(a[piv], a[col]);
        for (int i = 0; i < r; ++i) {
            if (i != col && a[i][col] != 0) {
                Rational f = a[i][col] / a[col][col];
                for (int j = col; j <= r; ++j) {
                    a[i][j] -= f * a[col][j];
                }
            }
        }
    }
    for (int i = 0; i < r; ++i) {
        if (a[i][r] / a[i][i] < 0) {
            return false;
        }
    }
    return true;
}

bool ConeData::strictly_convex() const
{
    for (const auto& g : generators) {
        if (g.is_zero()) {
            return false;
        }
    }
    // A simplicial cone on independent generators is strictly convex.
    try {
        if (generators.empty()) {
            return true;
        }
        LatticeVector zero(generators.front().rank());
        (void)contains(zero);
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

GradingFunctional::GradingFunctional(std::vector<std::int64_t> weights) : w_(std::move(weights))
{
    for (auto x : w_) {
        if (x <= 0) {
            throw std::invalid_argument("grading weights must be positive");
        }
    }
}

GradingFunctional GradingFunctional::standard(int rank)
{
    return GradingFunctional(std::vector<std::int64_t>(static_cast<std::size_t>(rank), 1));
}

std::int64_t GradingFunctional::value(const LatticeVector& m) const
{
    if (m.rank() != rank()) {
        throw std::invalid_argument("rank mismatch in degree");
    }
    std::int64_t s = 0;
    for (int i = 0; i < rank(); ++i) {
        s = checked_add(s, checked_mul(w_[i], m[i]));
    }
    return s;
}

std::int64_t GradingFunctional::degree(const LatticeVector& m, const ConeData& cone) const
{
    if (m.is_zero()) {
        throw std::invalid_argument("degree of the zero vector");
    }
    if (!cone.contains(m)) {
        throw std::invalid_argument("degree of " + m.str() + " outside the cone");
    }
    return value(m);
}

SkewForm::SkewForm(std::vector<std::vector<std::int64_t>> rows) : a_(std::move(rows))
{
    int r = rank();
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(a_[i].size()) != r) {
            throw std::invalid_argument("skew form must be square");
        }
        for (int j = 0; j < r; ++j) {
            if (a_[i][j] != -a_[j][i]) {
                throw std::invalid_argument("skew form is not antisymmetric");
            }
        }
    }
}

SkewForm SkewForm::zero(int rank)
{
    return SkewForm(std::vector<std::vector<std::int64_t>>(rank, std::vector<std::int64_t>(rank, 0)));
}

std::int64_t SkewForm::operator()(const LatticeVector& x, const LatticeVector& y) const
{
    if (x.rank() != rank() || y.rank() != rank()) {
        throw std::invalid_argument("rank mismatch in skew form");
    }
    std::int64_t s = 0;
    for (int i = 0; i < rank(); ++i) {
        if (x[i] == 0) {
            continue;
        }
        for (int j = 0; j < rank(); ++j) {
            s = checked_add(s, checked_mul(checked_mul(x[i], a_[i][j]), y[j]));
        }
    }
    return s;
}

Integer SkewForm::determinant() const
{
    int r = rank();
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            a[i][j] = Rational(static_cast<long>(a_[i][j]));
        }
    }
    Rational det = 1;
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i) {
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            return 0;
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int i = col + 1; i < r; ++i) {
            Rational f = a[i][col] / a[col][col];
            for (int j = col; j < r; ++j) {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    return det.get_num();
}

LatticeVector SkewForm::p_map(const LatticeVector& m) const
{
    LatticeVector p(rank());
    for (int i = 0; i < rank(); ++i) {
        LatticeVector e(rank());
        e[i] = 1;
        p[i] = (*this)(e, m);
    }
    return p;
}

std::string Point2::str() const
{
    return "(" + to_string(x) + "," + to_string(y) + ")";
}

Point2 to_point(const LatticeVector& v)
{
    if (v.rank() != 2) {
        throw std::invalid_argument("rank-2 geometry requested for rank " + std::to_string(v.rank()));
    }
    return {Rational(static_cast<long>(v[0])), Rational(static_cast<long>(v[1]))};
}

Rational dot(const Point2& p, const LatticeVector& n)
{
    return p.x * static_cast<long>(n[0]) + p.y * static_cast<long>(n[1]);
}

Rational cross(const Point2& a, const Point2& b)
{
    return a.x * b.y - a.y * b.x;
}

SupportR2 SupportR2::line(Point2 base, const LatticeVector& dir)
{
    SupportR2 s;
    s.kind = Kind::line;
    s.direction = dir.primitive() * dir.primitive().lex_sign();
    // Canonical base: meet with the y-axis when possible, else with the x-axis.
    if (s.direction[0] != 0) {
        Rational t = base.x / static_cast<long>(s.direction[0]);
        s.base = base - to_point(s.direction) * t;
    } else {
        Rational t = base.y / static_cast<long>(s.direction[1]);
        s.base = base - to_point(s.direction) * t;
    }
    return s;
}

SupportR2 SupportR2::ray(Point2 base, const LatticeVector& dir)
{
    SupportR2 s;
    s.kind = Kind::ray;
    s.base = std::move(base);
    s.direction = dir.primitive();
    return s;
}

Rational SupportR2::param(const Point2& p) const
{
    Point2 d = to_point(direction);
    Point2 diff = p - base;
    return (diff.x * d.x + diff.y * d.y) / (d.x * d.x + d.y * d.y);
}

bool SupportR2::contains(const Point2& p) const
{
    Point2 d = to_point(direction);
    if (cross(p - base, d) != 0) {
        return false;
    }
    return kind == Kind::line || param(p) >= 0;
}

bool SupportR2::contains_in_interior(const Point2& p) const
{
    return contains(p) && (kind == Kind::line || param(p) > 0);
}

bool SupportR2::collinear(const SupportR2& o) const
{
    return parallel(direction, o.direction) && cross(o.base - base, to_point(direction)) == 0;
}

bool SupportR2::same_set(const SupportR2& o) const
{
    if (kind != o.kind || !collinear(o)) {
        return false;
    }
    if (kind == Kind::line) {
        return true;
    }
    return base == o.base && direction == o.direction;
}

Intersection intersect_supports(const SupportR2& a, const SupportR2& b)
{
    Point2 da = to_point(a.direction);
    Point2 db = to_point(b.direction);
    Rational det = cross(da, db);
    Intersection out;
    if (det != 0) {
        // a.base + s da = b.base + t db
        Point2 w = b.base - a.base;
        Rational s = cross(w, db) / det;
        Rational t = cross(w, da) / det;
        if ((a.kind == SupportR2::Kind::ray && s < 0) || (b.kind == SupportR2::Kind::ray && t < 0)) {
            return out;
        }
        out.kind = Intersection::Kind::point;
        out.point = a.base + da * s;
        return out;
    }
    if (cross(b.base - a.base, da) != 0) {
        return out;
    }
    // Collinear: intersect parameter intervals along a.
    bool lo_inf = a.kind == SupportR2::Kind::line;
    bool hi_inf = true;
    Rational lo = 0, hi = 0;
    if (b.kind == SupportR2::Kind::ray) {
        Rational t0 = a.param(b.base);
        bool same_dir = a.direction == b.direction;
        if (same_dir) {
            if (lo_inf || t0 > lo) {
                lo = t0;
            }
            lo_inf = false;
        } else {
            hi = t0;
            hi_inf = false;
        }
    }
    if (!lo_inf && !hi_inf) {
        if (hi < lo) {
            return out;
        }
        if (hi == lo) {
            out.kind = Intersection::Kind::point;
            out.point = a.base + da * lo;
            return out;
        }
    }
    out.kind = Intersection::Kind::overlap;
    return out;
}

} // namespace scatter
