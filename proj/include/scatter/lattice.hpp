#pragma once

#include "scatter/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace scatter {

// Integer vector in M or N. Arithmetic is overflow checked.
class LatticeVector {
public:
    using Storage = boost::container::small_vector<std::int64_t, 4>;

    LatticeVector() = default;
    explicit LatticeVector(int rank) : c_(static_cast<std::size_t>(rank), 0) {}
    LatticeVector(std::initializer_list<std::int64_t> xs) : c_(xs.begin(), xs.end()) {}
    explicit LatticeVector(const std::vector<std::int64_t>& xs) : c_(xs.begin(), xs.end()) {}

    int rank() const { return static_cast<int>(c_.size()); }
    std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    std::int64_t& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const Storage& coords() const { return c_; }

    bool is_zero() const;
    LatticeVector primitive() const;
    std::int64_t content() const; // gcd of coordinates
    // Sign that makes the first nonzero coordinate positive.
    int lex_sign() const;

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    LatticeVector operator*(std::int64_t k) const;
    LatticeVector& operator+=(const LatticeVector& o);

    // Concatenation, used for (m, n) keys of the quantum algebra.
    LatticeVector concat(const LatticeVector& o) const;
    LatticeVector slice(int from, int len) const;

    std::string str() const;

    std::strong_ordering operator<=>(const LatticeVector& o) const
    {
        return std::lexicographical_compare_three_way(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
    }
    bool operator==(const LatticeVector& o) const { return c_ == o.c_; }

private:
    Storage c_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

std::int64_t pairing(const LatticeVector& m, const LatticeVector& n);
bool parallel(const LatticeVector& a, const LatticeVector& b);

struct ConeData {
    std::vector<LatticeVector> generators;
    bool contains(const LatticeVector& m) const;
    bool strictly_convex() const;
    static ConeData standard(int rank);
};

class GradingFunctional {
public:
    GradingFunctional() = default;
    explicit GradingFunctional(std::vector<std::int64_t> weights);
    static GradingFunctional standard(int rank);

    const std::vector<std::int64_t>& weights() const { return w_; }
    int rank() const { return static_cast<int>(w_.size()); }
    // Linear value on any lattice vector.
    std::int64_t value(const LatticeVector& m) const;
    // Degree of a nonzero element of the cone; throws otherwise.
    std::int64_t degree(const LatticeVector& m, const ConeData& cone) const;

private:
    std::vector<std::int64_t> w_;
};

class SkewForm {
public:
    SkewForm() = default;
    explicit SkewForm(std::vector<std::vector<std::int64_t>> rows);
    static SkewForm zero(int rank);

    int rank() const { return static_cast<int>(a_.size()); }
    std::int64_t operator()(const LatticeVector& x, const LatticeVector& y) const;
    std::int64_t entry(int i, int j) const { return a_[i][j]; }
    const std::vector<std::vector<std::int64_t>>& rows() const { return a_; }
    Integer determinant() const;
    bool nondegenerate() const { return determinant() != 0; }
    // p(m) in N with <m', p(m)> = omega(m', m).
    LatticeVector p_map(const LatticeVector& m) const;

private:
    std::vector<std::vector<std::int64_t>> a_;
};

// Rank-2 exact geometry.
struct Point2 {
    Rational x, y;
    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator<(const Point2& o) const { return x < o.x || (x == o.x && y < o.y); }
    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(const Rational& s) const { return {x * s, y * s}; }
    std::string str() const;
};

Point2 to_point(const LatticeVector& v);
Rational dot(const Point2& p, const LatticeVector& n);
Rational cross(const Point2& a, const Point2& b);

struct SupportR2 {
    enum class Kind { line, ray };
    Kind kind = Kind::line;
    Point2 base;
    LatticeVector direction; // primitive

    static SupportR2 line(Point2 base, const LatticeVector& dir);
    static SupportR2 ray(Point2 base, const LatticeVector& dir);

    bool contains(const Point2& p) const;
    // Interior of a ray excludes its base point.
    bool contains_in_interior(const Point2& p) const;
    bool same_set(const SupportR2& o) const;
    bool collinear(const SupportR2& o) const;
    // Parameter s with p = base + s * direction (p assumed on the carrier line).
    Rational param(const Point2& p) const;
};

struct Intersection {
    enum class Kind { empty, point, overlap };
    Kind kind = Kind::empty;
    Point2 point;
};

Intersection intersect_supports(const SupportR2& a, const SupportR2& b);

} // namespace scatter
